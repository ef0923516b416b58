// SPDX-License-Identifier: Apache-2.0
//
// ttdssp - behavioral simulator for true-time-delay array signal processing
// Copyright (C) 2026 The ttdssp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ttdssp/runner.hpp"

#include "ttdssp/analysis.hpp"
#include "ttdssp/codebook.hpp"
#include "ttdssp/errors.hpp"
#include "ttdssp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace ttdssp
{

namespace
{

using io::json;
namespace fs = std::filesystem;

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

json finite_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

class Context
{
  public:
    Context(const Scenario &s, bool dump_iq, std::ostream &log)
        : s_(s), dump_iq_(dump_iq), log_(log), dir_(s.output_dir), hash_(scenario_hash(s))
    {
    }

    const Scenario &s() const { return s_; }
    bool dump_iq() const { return dump_iq_; }
    std::ostream &log() { return log_; }
    const std::string &hash() const { return hash_; }

    fs::path path(const std::string &name) const { return dir_ / name; }

    void csv(const std::string &name, const std::vector<std::string> &header,
             const std::vector<std::vector<double>> &rows)
    {
        io::write_csv(path(name), header, rows);
        files_.push_back(name);
    }

    void json_file(const std::string &name, json doc)
    {
        doc["scenario_hash"] = hash_;
        doc["seed"] = s_.seed;
        io::write_json(path(name), doc);
        files_.push_back(name);
    }

    void iq(const std::string &name, const MultichannelSignal &sig)
    {
        io::write_iq(path(name), sig, hash_);
        files_.push_back(name);
        files_.push_back(name + ".json");
    }

    void iq(const std::string &name, const CombinedSignal &sig, const SignalMeta &meta)
    {
        io::write_iq(path(name), sig, meta, hash_);
        files_.push_back(name);
        files_.push_back(name + ".json");
    }

    void text(const std::string &name, const std::string &body)
    {
        fs::create_directories(dir_);
        std::FILE *f = std::fopen(path(name).c_str(), "wb");
        if (!f)
            throw std::runtime_error("cannot write " + path(name).string());
        std::fwrite(body.data(), 1, body.size(), f);
        std::fclose(f);
        files_.push_back(name);
    }

    std::vector<ArtifactEntry> manifest(int exit_code, const std::string &message)
    {
        std::vector<ArtifactEntry> out;
        json files = json::array();
        for (const auto &name : files_)
        {
            ArtifactEntry e{name, io::sha256_file(path(name)), fs::file_size(path(name))};
            files.push_back({{"path", e.path}, {"sha256", e.sha256}, {"bytes", e.bytes}});
            out.push_back(std::move(e));
        }
        json doc = {{"mode", std::string(to_string(s_.mode))},
                    {"seed", s_.seed},
                    {"scenario_hash", hash_},
                    {"exit_code", exit_code},
                    {"message", message},
                    {"files", files}};
        io::write_json(path("manifest.json"), doc);
        return out;
    }

  private:
    const Scenario &s_;
    bool dump_iq_;
    std::ostream &log_;
    fs::path dir_;
    std::string hash_;
    std::vector<std::string> files_;
};

SignalMeta meta_of(const MultichannelSignal &sig)
{
    return sig.meta;
}

// ---- train -------------------------------------------------------------

void run_train(Context &ctx)
{
    const Scenario &s = ctx.s();
    const ArrayConfig cfg = s.array.config();
    const OfdmPlan plan = s.ofdm.plan(cfg);
    const SamplerConfig scfg = s.sampler.config(plan.sample_rate_hz(), s.seed);
    const TapSet taps = training_taps(cfg, s.training.diversity_order);
    realize_taps(taps, scfg);
    const auto grid = s.training.theta_grid_rad();

    const AngleFrequencyMap map = build_map(cfg, taps, plan, grid);
    const Heatmap hm = heatmap(cfg, taps, plan, grid, scfg, s.ofdm.n_symbols);

    std::vector<std::string> header{"theta_deg"};
    for (double f : hm.subcarrier_freq_hz)
        header.push_back(fmt("%.4f", f / 1e6));
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < hm.rows(); ++i)
    {
        std::vector<double> r{rad2deg(hm.angles_rad[i])};
        for (std::size_t k = 0; k < hm.cols(); ++k)
            r.push_back(hm.at(i, k));
        rows.push_back(std::move(r));
    }
    ctx.csv("heatmap.csv", header, rows);

    rows.clear();
    for (std::size_t i = 0; i < map.angles_rad.size(); ++i)
        rows.push_back({rad2deg(map.angles_rad[i]), static_cast<double>(map.peak_subcarrier_index[i]),
                        map.subcarrier_freq_hz[map.peak_subcarrier_index[i]] / 1e6, map.peak_frequency_hz[i] / 1e6,
                        cfg.to_rf(map.peak_frequency_hz[i]) / 1e6, pow2db(map.peak_gain[i]),
                        map.usable[i] ? 1.0 : 0.0});
    ctx.csv("map.csv",
            {"theta_deg", "peak_subcarrier", "peak_bin_if_mhz", "ridge_if_mhz", "ridge_rf_mhz", "peak_gain_db",
             "usable"},
            rows);

    json grid_est = json::array();
    double max_err = 0.0;
    for (std::size_t i = 0; i < hm.rows(); ++i)
    {
        std::vector<double> p(hm.cols());
        for (std::size_t k = 0; k < hm.cols(); ++k)
            p[k] = db2pow(hm.at(i, k));
        const auto est = estimate_aoa(p, map);
        const double err = rad2deg(est.theta_rad - hm.angles_rad[i]);
        max_err = std::max(max_err, std::abs(err));
        grid_est.push_back({{"theta_deg", rad2deg(hm.angles_rad[i])},
                            {"estimate_deg", rad2deg(est.theta_rad)},
                            {"error_deg", err},
                            {"peak_bin", est.peak_bin},
                            {"confidence_db", est.confidence_db}});
    }

    const double fs = plan.sample_rate_hz();
    const OfdmPlan burst = sounding_plan(plan);
    const ComplexVector stim = gen_ofdm(burst, s.ofdm.n_symbols);
    MultichannelSignal rx = apply_channel(stim, fs, cfg, {deg2rad(s.channel.theta_deg), s.channel.snr_db, s.seed});
    rx.meta.stimulus = "ofdm_pilot";
    const CombinedSignal comb = delay_and_combine(rx, taps, scfg);
    const auto power = subcarrier_power(comb.samples, burst, -static_cast<std::ptrdiff_t>(comb.latency_samples));
    rows.clear();
    for (std::size_t k = 0; k < power.size(); ++k)
        rows.push_back({map.subcarrier_freq_hz[k] / 1e6, cfg.to_rf(map.subcarrier_freq_hz[k]) / 1e6,
                        pow2db(std::max(power[k], 1e-30))});
    ctx.csv("psd.csv", {"if_mhz", "rf_mhz", "power_db"}, rows);
    if (ctx.dump_iq())
    {
        ctx.iq("rx.cf32", rx);
        ctx.iq("combined.cf32", comb, meta_of(rx));
    }

    json doc = {{"grid", grid_est},
                {"grid_max_error_deg", max_err},
                {"diversity_order", s.training.diversity_order},
                {"integer_bin_collisions", integer_collisions(map).size()}};
    const auto write_doc = [&] { ctx.json_file("aoa_estimates.json", doc); };

    json ch = {{"theta_deg", s.channel.theta_deg}, {"snr_db", finite_or_null(s.channel.snr_db.value_or(NAN))}};
    try
    {
        const auto est = estimate_aoa(power, map);
        ch["estimate_deg"] = rad2deg(est.theta_rad);
        ch["error_deg"] = rad2deg(est.theta_rad) - s.channel.theta_deg;
        ch["peak_bin"] = est.peak_bin;
        ch["peak_if_mhz"] = est.peak_frequency_hz / 1e6;
        ch["confidence_db"] = est.confidence_db;
        doc["channel"] = ch;
        ctx.log() << "train: theta " << s.channel.theta_deg << " deg -> estimate "
                  << fmt("%.3f", rad2deg(est.theta_rad)) << " deg (confidence " << fmt("%.1f", est.confidence_db)
                  << " dB); grid max error " << fmt("%.4f", max_err) << " deg over " << hm.rows() << " angles\n";
    }
    catch (const NoDetectionError &)
    {
        ch["estimate_deg"] = nullptr;
        doc["channel"] = ch;
        write_doc();
        throw;
    }

    if (s.training.mc_trials > 0)
    {
        const auto st = aoa_monte_carlo(cfg, taps, plan, map, deg2rad(s.channel.theta_deg), s.training.mc_snr_db,
                                        s.training.mc_trials, s.seed, scfg, s.ofdm.n_symbols);
        doc["monte_carlo"] = {{"theta_deg", s.channel.theta_deg},
                              {"snr_db", s.training.mc_snr_db},
                              {"trials", st.trials},
                              {"detections", st.detections},
                              {"rms_error_deg", finite_or_null(rad2deg(st.rms_error_rad))},
                              {"max_error_deg", rad2deg(st.max_error_rad)}};
        ctx.log() << "train: monte carlo " << st.detections << "/" << st.trials << " detections, rms error "
                  << fmt("%.4f", rad2deg(st.rms_error_rad)) << " deg at " << s.training.mc_snr_db << " dB SNR\n";
    }
    write_doc();
}

// ---- beamform ----------------------------------------------------------

void run_beamform(Context &ctx)
{
    const Scenario &s = ctx.s();
    const ArrayConfig cfg = s.array.config();
    const double fs = s.sampler.tone_rate_hz(cfg);
    const SamplerConfig scfg = s.sampler.config(fs, s.seed);
    const double theta = deg2rad(s.channel.theta_deg);
    const TapSet applied = realize_taps(beamforming_taps(cfg, theta), scfg);

    std::vector<double> freqs;
    const double span = s.beamform.span_mhz * 1e6;
    for (std::size_t i = 0; i < s.beamform.points; ++i)
        freqs.push_back(s.beamform.points == 1
                            ? cfg.carrier_hz
                            : cfg.carrier_hz - 0.5 * span + span * static_cast<double>(i) /
                                                                static_cast<double>(s.beamform.points - 1));
    const GainCurve g = beamforming_gain(cfg, theta, freqs, scfg, s.beamform.n_samples);

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < g.freq_hz.size(); ++i)
    {
        const double f = std::clamp(g.freq_hz[i], cfg.band_low_hz(), cfg.band_high_hz());
        rows.push_back({g.freq_hz[i] / 1e6, g.gain_db[i], pow2db(array_gain(cfg, applied, theta, f))});
    }
    ctx.csv("gain_vs_freq.csv", {"freq_mhz", "gain_db", "analytic_db"}, rows);

    const auto [lo, hi] = std::minmax_element(g.gain_db.begin(), g.gain_db.end());
    double mean = 0.0;
    for (double v : g.gain_db)
        mean += v / static_cast<double>(g.gain_db.size());
    json doc = {{"elements", cfg.n_elements},
                {"theta_deg", s.channel.theta_deg},
                {"coherent_gain_db", 20.0 * std::log10(static_cast<double>(cfg.n_elements))},
                {"mean_gain_db", mean},
                {"min_gain_db", *lo},
                {"max_gain_db", *hi},
                {"ripple_db", *hi - *lo},
                {"span_mhz", s.beamform.span_mhz},
                {"sample_rate_hz", fs},
                {"taps", io::tapset_to_json(applied, ctx.hash())}};

    if (s.beamform.chirp)
    {
        const double half = 0.5 * std::min(span, cfg.bandwidth_hz);
        const GainCurve w = chirp_gain(cfg, theta, cfg.carrier_hz - half, cfg.carrier_hz + half, scfg,
                                       std::max<std::size_t>(s.beamform.n_samples, 4096), 1024);
        rows.clear();
        for (std::size_t i = 0; i < w.freq_hz.size(); ++i)
            rows.push_back({w.freq_hz[i] / 1e6, w.gain_db[i]});
        ctx.csv("wideband_gain.csv", {"freq_mhz", "gain_db"}, rows);
        if (!w.gain_db.empty())
        {
            const auto [wl, wh] = std::minmax_element(w.gain_db.begin(), w.gain_db.end());
            doc["chirp_min_gain_db"] = *wl;
            doc["chirp_max_gain_db"] = *wh;
        }
    }
    if (ctx.dump_iq())
    {
        const double bb = std::round(cfg.if_center_hz / fs * static_cast<double>(s.beamform.n_samples)) * fs /
                          static_cast<double>(s.beamform.n_samples);
        const auto tone = gen_tone(bb, fs, s.beamform.n_samples, cfg.if_center_hz);
        MultichannelSignal rx = apply_channel(tone, fs, cfg, {theta, s.channel.snr_db, s.seed});
        rx.meta.stimulus = "tone";
        ctx.iq("rx.cf32", rx);
        ctx.iq("combined.cf32", delay_and_combine(rx, applied, scfg), meta_of(rx));
    }
    ctx.json_file("beamform.json", doc);
    ctx.log() << "beamform: N=" << cfg.n_elements << " theta " << s.channel.theta_deg << " deg, gain "
              << fmt("%.3f", *lo) << ".." << fmt("%.3f", *hi) << " dB over " << s.beamform.span_mhz
              << " MHz (coherent " << fmt("%.2f", 20.0 * std::log10(static_cast<double>(cfg.n_elements)))
              << " dB)\n";
}

// ---- sweep -------------------------------------------------------------

void run_sweep(Context &ctx)
{
    const Scenario &s = ctx.s();
    const ArrayConfig cfg = s.array.config();
    const double fs = s.sampler.tone_rate_hz(cfg);
    const SamplerConfig scfg = s.sampler.config(fs, s.seed);

    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::floor(180.0 / s.sweep.theta_step_deg + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
        grid.push_back(deg2rad(-90.0 + static_cast<double>(i) * s.sweep.theta_step_deg));

    std::vector<std::string> header{"theta_deg"};
    std::vector<std::vector<double>> cols;
    json probes = json::array();
    for (double p : s.sweep.probe_deg)
    {
        const TapSet taps = realize_taps(beamforming_taps(cfg, deg2rad(p)), scfg);
        const auto analytic = beam_pattern(cfg, taps, cfg.carrier_hz, grid);
        std::vector<double> a_db;
        std::vector<double> m_db(grid.size());
        for (double v : analytic)
            a_db.push_back(pow2db(std::max(v, 1e-30)));
        const auto ng = static_cast<std::ptrdiff_t>(grid.size());
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < ng; ++i)
        {
            try
            {
                const double v = tone_gain(cfg, taps, grid[static_cast<std::size_t>(i)], cfg.carrier_hz, scfg, 4000);
                m_db[static_cast<std::size_t>(i)] = pow2db(std::max(v, 1e-30));
            }
            catch (...)
            {
#pragma omp critical
                if (!err)
                    err = std::current_exception();
            }
        }
        if (err)
            std::rethrow_exception(err);
        const auto peak = static_cast<std::size_t>(std::max_element(m_db.begin(), m_db.end()) - m_db.begin());
        probes.push_back({{"probe_deg", p}, {"peak_deg", rad2deg(grid[peak])}, {"peak_gain_db", m_db[peak]}});
        header.push_back(fmt("analytic_%g_db", p));
        header.push_back(fmt("measured_%g_db", p));
        cols.push_back(std::move(a_db));
        cols.push_back(std::move(m_db));
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        std::vector<double> r{rad2deg(grid[i])};
        for (const auto &c : cols)
            r.push_back(c[i]);
        rows.push_back(std::move(r));
    }
    ctx.csv("patterns.csv", header, rows);
    ctx.json_file("sweep.json", {{"elements", cfg.n_elements}, {"freq_mhz", cfg.carrier_hz / 1e6}, {"probes", probes}});
    ctx.log() << "sweep: " << s.sweep.probe_deg.size() << " probe beams over " << grid.size() << " angles\n";
}

// ---- squint ------------------------------------------------------------

void run_squint(Context &ctx)
{
    const Scenario &s = ctx.s();
    const ArrayConfig base = s.array.config();
    const double theta = deg2rad(s.squint.theta_deg);
    std::vector<double> freqs;
    for (std::size_t i = 0; i < s.squint.points; ++i)
        freqs.push_back(base.band_low_hz() +
                        base.bandwidth_hz * static_cast<double>(i) / static_cast<double>(s.squint.points - 1));

    std::vector<std::string> header{"freq_mhz"};
    std::vector<std::vector<double>> cols;
    json edges = json::array();
    for (auto n : s.squint.element_counts)
    {
        ArrayConfig cfg = base;
        cfg.n_elements = n;
        const TapSet ttd = beamforming_taps(cfg, theta);
        std::vector<double> ps;
        std::vector<double> td;
        double ttd_worst = 0.0;
        for (double f : freqs)
        {
            ps.push_back(squint_loss(cfg, n, theta, f));
            const double l = std::max(0.0, pow2db(static_cast<double>(n * n) / array_gain(cfg, ttd, theta, f)));
            td.push_back(l);
            ttd_worst = std::max(ttd_worst, l);
        }
        edges.push_back({{"elements", n},
                         {"phase_shifter_edge_loss_db", std::max(ps.front(), ps.back())},
                         {"ttd_max_loss_db", ttd_worst}});
        header.push_back("ps_loss_n" + std::to_string(n) + "_db");
        header.push_back("ttd_loss_n" + std::to_string(n) + "_db");
        cols.push_back(std::move(ps));
        cols.push_back(std::move(td));
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < freqs.size(); ++i)
    {
        std::vector<double> r{freqs[i] / 1e6};
        for (const auto &c : cols)
            r.push_back(c[i]);
        rows.push_back(std::move(r));
    }
    ctx.csv("squint.csv", header, rows);
    ctx.json_file("squint.json", {{"theta_deg", s.squint.theta_deg},
                                  {"fractional_bandwidth", base.bandwidth_hz / base.carrier_hz},
                                  {"band_edges", edges}});
    ctx.log() << "squint: theta " << s.squint.theta_deg << " deg, " << s.squint.element_counts.size()
              << " array sizes\n";
}

// ---- evm ---------------------------------------------------------------

void run_evm(Context &ctx)
{
    const Scenario &s = ctx.s();
    const ArrayConfig cfg = s.array.config();
    const OfdmPlan plan = OfdmPlan::for_band(cfg, s.ofdm.n_subcarriers, s.ofdm.subcarrier_spacing_khz * 1e3,
                                             s.ofdm.cp_len, s.evm.active_subcarriers);
    const double fs = plan.sample_rate_hz();
    const SamplerConfig scfg = s.sampler.config(fs, s.seed);
    const double theta = deg2rad(s.channel.theta_deg);

    const QamFrame frame = gen_qam(s.evm.qam_order, s.evm.n_symbols, plan, s.seed);
    MultichannelSignal rx = apply_channel(frame.stream, fs, cfg, {theta, s.channel.snr_db, s.seed});
    rx.meta.stimulus = "qam" + std::to_string(s.evm.qam_order);
    const CombinedSignal comb = delay_and_combine(rx, beamforming_taps(cfg, theta), scfg);
    const auto demod = ofdm_demodulate(plan, comb.samples, s.evm.n_symbols,
                                       -static_cast<std::ptrdiff_t>(comb.latency_samples), plan.cp_len / 2);
    ComplexVector got;
    ComplexVector ref;
    for (std::size_t k = 0; k < demod.size(); ++k)
    {
        got.insert(got.end(), demod[k].begin(), demod[k].end());
        ref.insert(ref.end(), frame.symbols[k].begin(), frame.symbols[k].end());
    }
    const EvmReport rep = evm(got, ref);

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < got.size(); ++i)
        rows.push_back({rep.constellation[i].real(), rep.constellation[i].imag(), ref[i].real(), ref[i].imag()});
    ctx.csv("constellation.csv", {"i", "q", "ref_i", "ref_q"}, rows);
    if (ctx.dump_iq())
    {
        ctx.iq("rx.cf32", rx);
        ctx.iq("combined.cf32", comb, meta_of(rx));
    }
    std::size_t errors = 0;
    for (std::size_t i = 0; i < got.size(); ++i)
        errors += qam_demap(s.evm.qam_order, rep.constellation[i]) != qam_demap(s.evm.qam_order, ref[i]);
    ctx.json_file("evm.json", {{"qam_order", s.evm.qam_order},
                               {"symbols", got.size()},
                               {"active_subcarriers", plan.n_active()},
                               {"elements", cfg.n_elements},
                               {"theta_deg", s.channel.theta_deg},
                               {"snr_db", finite_or_null(s.channel.snr_db.value_or(NAN))},
                               {"evm_rms_pct", rep.evm_rms_pct},
                               {"symbol_errors", errors},
                               {"equalizer", {rep.equalizer.real(), rep.equalizer.imag()}}});
    ctx.log() << "evm: " << s.evm.qam_order << "-QAM, " << got.size() << " symbols, EVM "
              << fmt("%.3f", rep.evm_rms_pct) << " %\n";
}

// ---- iip3 --------------------------------------------------------------

void run_iip3(Context &ctx)
{
    const Scenario &s = ctx.s();
    const ArrayConfig cfg = s.array.config();
    const double fs = s.sampler.tone_rate_hz(cfg);
    const SamplerConfig scfg = s.sampler.config(fs, s.seed);
    const double f1 = s.iip3.f1_mhz * 1e6;
    const double f2 = s.iip3.f2_mhz * 1e6;
    const auto sweep = two_tone_sweep(scfg, f1, f2, s.iip3.input_dbm, cfg.if_center_hz, s.iip3.nfft, s.iip3.n_samples);
    const Iip3Result r = extract_iip3(sweep, f1, f2);

    const auto &top = *std::max_element(sweep.begin(), sweep.end(), [](const auto &a, const auto &b) {
        return a.input_dbm_per_tone < b.input_dbm_per_tone;
    });
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < top.output.nfft(); ++k)
        pts.emplace_back(top.output.bin_frequency_hz(k) / 1e6, pow2db(std::max(top.output.power[k], 1e-30)));
    std::sort(pts.begin(), pts.end());
    std::vector<std::vector<double>> rows;
    for (const auto &[f, p] : pts)
        rows.push_back({f, p});
    ctx.csv("two_tone_psd.csv", {"freq_mhz", "power_dbm"}, rows);

    json points = json::array();
    for (std::size_t i = 0; i < sweep.size(); ++i)
        points.push_back({{"input_dbm_per_tone", sweep[i].input_dbm_per_tone},
                          {"fundamental_dbm", finite_or_null(r.fundamental_dbm[i])},
                          {"im3_dbm", finite_or_null(r.im3_dbm[i])},
                          {"iip3_dbm", finite_or_null(r.point_iip3_dbm[i])}});
    ctx.json_file("iip3.json", {{"configured_iip3_dbm", finite_or_null(s.sampler.iip3_dbm.value_or(NAN))},
                                {"detected", r.detected},
                                {"iip3_dbm", finite_or_null(r.iip3_dbm)},
                                {"im3_slope", finite_or_null(r.im3_slope)},
                                {"slope_warning", r.slope_warning},
                                {"f1_mhz", s.iip3.f1_mhz},
                                {"f2_mhz", s.iip3.f2_mhz},
                                {"im3_mhz", {2.0 * s.iip3.f1_mhz - s.iip3.f2_mhz, 2.0 * s.iip3.f2_mhz - s.iip3.f1_mhz}},
                                {"points", points}});
    if (r.detected)
        ctx.log() << "iip3: extracted " << fmt("%.3f", r.iip3_dbm) << " dBm, IM3 slope " << fmt("%.3f", r.im3_slope)
                  << (r.slope_warning ? " (outside [2.5, 3.5])" : "") << "\n";
    else
        ctx.log() << "iip3: no IM3 product above the floor (linear chain, IIP3 = +inf)\n";
}

// ---- hpbw --------------------------------------------------------------

void run_hpbw(Context &ctx)
{
    const Scenario &s = ctx.s();
    std::vector<std::vector<double>> rows;
    for (auto n : s.hpbw.element_counts)
    {
        ArraySettings a = s.array;
        a.elements = n;
        const ArrayConfig cfg = a.config();
        const double w = hpbw(cfg, cfg.carrier_hz);
        rows.push_back({static_cast<double>(n), rad2deg(w), w});
        ctx.log() << "hpbw: N=" << n << " " << fmt("%.4f", rad2deg(w)) << " deg\n";
    }
    ctx.csv("hpbw.csv", {"elements", "hpbw_deg", "hpbw_rad"}, rows);
}

// ---- dump-taps ---------------------------------------------------------

void run_dump_taps(Context &ctx)
{
    const Scenario &s = ctx.s();
    const ArrayConfig cfg = s.array.config();
    const double fs = s.sampler.tone_rate_hz(cfg);
    const SamplerConfig scfg = s.sampler.config(fs, s.seed);

    const TapSet train = training_taps(cfg, s.training.diversity_order);
    const TapSet beam = beamforming_taps(cfg, deg2rad(s.channel.theta_deg));
    ctx.json_file("training_taps.json", io::tapset_to_json(train, ctx.hash()));
    ctx.json_file("beamforming_taps.json", io::tapset_to_json(beam, ctx.hash()));

    const double bracket = interleave_bracket(cfg);
    ctx.json_file("sizing.json",
                  {{"fov_rule", {{"spacing_over_wavelength", cfg.spacing_m / cfg.wavelength_m()},
                            {"fov_deg", 120.0},
                            {"elements", cfg.n_elements},
                            {"bandwidth_over_carrier", cfg.bandwidth_hz / cfg.carrier_hz},
                            {"bracket", bracket},
                            {"levels", min_interleave_levels(cfg)}}},
                   {"delay_range",
                    {{"sample_rate_hz", fs},
                     {"max_training_delay_ps", train.delays_s.back() * 1e12},
                     {"levels", training_interleave_levels(cfg, fs, s.training.diversity_order)}}},
                   {"configured_levels", s.sampler.levels}});

    const TapSet qt = realize_taps(train, scfg);
    const TapSet qb = realize_taps(beam, scfg);
    ctx.json_file("training_taps_quantized.json", io::tapset_to_json(qt, ctx.hash()));
    ctx.json_file("beamforming_taps_quantized.json", io::tapset_to_json(qb, ctx.hash()));
    ctx.log() << "dump-taps: tau_N = " << fmt("%.4f", train.delays_s.back() * 1e9) << " ns, M(delay range) = "
              << training_interleave_levels(cfg, fs, s.training.diversity_order)
              << ", M(fov rule) = " << min_interleave_levels(cfg) << "\n";
}

} // namespace

RunResult run(const Scenario &scenario, bool dump_iq, std::ostream &log)
{
    RunResult res;
    Context ctx(scenario, dump_iq, log);
    try
    {
        scenario.validate();
        ctx.text("scenario.yaml", to_yaml(scenario, false));
        switch (scenario.mode)
        {
        case Mode::Train: run_train(ctx); break;
        case Mode::Beamform: run_beamform(ctx); break;
        case Mode::Sweep: run_sweep(ctx); break;
        case Mode::Squint: run_squint(ctx); break;
        case Mode::Evm: run_evm(ctx); break;
        case Mode::Iip3: run_iip3(ctx); break;
        case Mode::Hpbw: run_hpbw(ctx); break;
        case Mode::DumpTaps: run_dump_taps(ctx); break;
        }
    }
    catch (const SizingError &e)
    {
        res.exit_code = kExitSizing;
        res.message = std::string("sizing error (element ") + std::to_string(e.element()) + "): " + e.what();
    }
    catch (const NoDetectionError &e)
    {
        res.exit_code = kExitNoDetection;
        res.message = std::string("no detection: ") + e.what();
    }
    catch (const ConfigError &e)
    {
        res.exit_code = kExitConfig;
        res.message = std::string("config error: ") + e.what();
    }
    catch (const MapAmbiguityError &e)
    {
        res.exit_code = kExitConfig;
        res.message = std::string("config error: ") + e.what();
    }
    catch (const AlignmentError &e)
    {
        res.exit_code = kExitFailure;
        res.message = std::string("alignment error: ") + e.what();
    }
    res.artifacts = ctx.manifest(res.exit_code, res.message);
    return res;
}

} // namespace ttdssp
