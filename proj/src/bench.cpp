#include "secopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace secopt {

std::string Scheme::name() const {
    switch (kind) {
        case Kind::NoIrs: return "no_irs";
        case Kind::RandomIrs: return "random_irs";
        case Kind::AoContinuous: return "ao_continuous";
        case Kind::AoDiscrete: return "ao_q" + std::to_string(q_levels);
    }
    return "?";
}

Scheme Scheme::parse(const std::string& text) {
    if (text == "no_irs") return {Kind::NoIrs, 0};
    if (text == "random_irs") return {Kind::RandomIrs, 0};
    if (text == "ao_continuous") return {Kind::AoContinuous, 0};
    if (text.rfind("ao_q", 0) == 0) {
        const std::string tail = text.substr(4);
        char* end = nullptr;
        const long q = std::strtol(tail.c_str(), &end, 10);
        if (end && *end == '\0' && q >= 2) {
            return {Kind::AoDiscrete, static_cast<int>(q)};
        }
    }
    throw ConfigError("unknown scheme '" + text + "'");
}

SweepAxis parse_axis(const std::string& text) {
    if (text == "p_max") return SweepAxis::PMax;
    if (text == "m_elements") return SweepAxis::MElements;
    if (text == "n_r") return SweepAxis::NR;
    throw ConfigError("unknown sweep axis '" + text + "'");
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::PMax: return "p_max";
        case SweepAxis::MElements: return "m_elements";
        case SweepAxis::NR: return "n_r";
    }
    return "?";
}

double run_scheme(const Scheme& scheme, const ChannelSet& chs, double p_max,
                  const AoOptions& opts, RngStream& rng) {
    switch (scheme.kind) {
        case Scheme::Kind::NoIrs: {
            TxCovariance q0 = TxCovariance::uniform(chs.n_t(), p_max);
            TxCovariance q = sca_optimize_channels(chs.h_tr, chs.h_te, chs.sigma_r2,
                                                   chs.sigma_e2, p_max, q0, opts.sca)
                                 .first;
            return secrecy_rate_channels(chs.h_tr, chs.h_te, q, chs.sigma_r2,
                                         chs.sigma_e2, true);
        }
        case Scheme::Kind::RandomIrs: {
            ReflectVector theta = ReflectVector::uniform_phases(chs.m(), rng);
            TxCovariance q0 = TxCovariance::uniform(chs.n_t(), p_max);
            TxCovariance q = sca_optimize(chs, theta, p_max, q0, opts.sca).first;
            return secrecy_rate(chs, theta, q, true);
        }
        case Scheme::Kind::AoContinuous:
            return ao_optimize(chs, p_max, opts, rng).secrecy_rate_clamped;
        case Scheme::Kind::AoDiscrete: {
            AoOptions o = opts;
            o.q_levels = scheme.q_levels;
            return ao_discrete(chs, p_max, o, rng).secrecy_rate_clamped;
        }
    }
    throw ConfigError("run_scheme: bad scheme kind");
}

namespace {

ScenarioConfig apply_axis(ScenarioConfig cfg, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::PMax:
            cfg.p_max_w = value;
            break;
        case SweepAxis::MElements:
            cfg.m_elements = static_cast<int>(std::llround(value));
            break;
        case SweepAxis::NR:
            cfg.n_r = static_cast<int>(std::llround(value));
            break;
    }
    cfg.validate();
    return cfg;
}

// One (axis point, realization) cell: all schemes on the same ChannelSet with
// identically derived streams. The continuous AO stage is shared between
// ao_continuous and every ao_q<k> scheme; with equal streams this is exactly
// what independent ao_discrete calls would compute, minus the repeats.
void run_cell(const ScenarioConfig& cfg, const AoOptions& opts,
              const std::vector<Scheme>& schemes, std::uint64_t realization,
              std::vector<double>& out_rates) {
    const ChannelSet chs = scenario_channels(cfg, realization);
    const bool wants_ao =
        std::any_of(schemes.begin(), schemes.end(), [](const Scheme& s) {
            return s.kind == Scheme::Kind::AoContinuous ||
                   s.kind == Scheme::Kind::AoDiscrete;
        });

    OptimizerReport ao;
    if (wants_ao) {
        RngStream rng = RngStream::derive(cfg.master_seed, {rng_realm::scheme, realization});
        ao = ao_optimize(chs, cfg.p_max_w, opts, rng);
    }

    for (std::size_t s = 0; s < schemes.size(); ++s) {
        const Scheme& scheme = schemes[s];
        switch (scheme.kind) {
            case Scheme::Kind::AoContinuous:
                out_rates[s] = ao.secrecy_rate_clamped;
                break;
            case Scheme::Kind::AoDiscrete: {
                ReflectVector theta_d = project_discrete(ao.final_theta, scheme.q_levels);
                TxCovariance q = ao.final_q;
                if (opts.reoptimize_q_after_projection) {
                    q = sca_optimize(chs, theta_d, cfg.p_max_w, q, opts.sca).first;
                }
                out_rates[s] = secrecy_rate(chs, theta_d, q, true);
                break;
            }
            default: {
                RngStream rng =
                    RngStream::derive(cfg.master_seed, {rng_realm::scheme, realization});
                out_rates[s] = run_scheme(scheme, chs, cfg.p_max_w, opts, rng);
            }
        }
    }
}

} // namespace

SweepResult monte_carlo_sweep(const ScenarioConfig& cfg, const AoOptions& opts,
                              const std::vector<Scheme>& schemes, SweepAxis axis,
                              const std::vector<double>& values, int n_realizations,
                              int workers) {
    if (values.empty()) throw ConfigError("sweep: no axis values");
    if (!std::is_sorted(values.begin(), values.end()))
        throw ConfigError("sweep: axis values must be ascending");
    if (n_realizations < 1) throw ConfigError("sweep: n_realizations must be >= 1");
    if (schemes.empty()) throw ConfigError("sweep: no schemes");
    opts.validate();

    const std::size_t n_axis = values.size();
    const std::size_t n_schemes = schemes.size();

    // rates[axis][realization][scheme]
    std::vector<std::vector<std::vector<double>>> rates(
        n_axis, std::vector<std::vector<double>>(
                    n_realizations, std::vector<double>(n_schemes, 0.0)));
    std::vector<double> axis_seconds(n_axis, 0.0);

    struct Task { std::size_t ai; int r; };
    std::vector<Task> tasks;
    tasks.reserve(n_axis * n_realizations);
    for (std::size_t ai = 0; ai < n_axis; ++ai)
        for (int r = 0; r < n_realizations; ++r) tasks.push_back({ai, r});

    std::vector<ScenarioConfig> cfgs;
    cfgs.reserve(n_axis);
    for (double v : values) cfgs.push_back(apply_axis(cfg, axis, v));

    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::vector<double> cell_seconds(tasks.size(), 0.0);

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                run_cell(cfgs[tasks[i].ai], opts, schemes,
                         static_cast<std::uint64_t>(tasks[i].r),
                         rates[tasks[i].ai][tasks[i].r]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
            cell_seconds[i] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };

    const int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    for (std::size_t i = 0; i < tasks.size(); ++i) axis_seconds[tasks[i].ai] += cell_seconds[i];

    SweepResult result;
    result.axis = axis_name(axis);
    result.axis_values = values;
    for (const Scheme& s : schemes) result.scheme_names.push_back(s.name());
    result.n_realizations = n_realizations;
    result.wall_time_s = axis_seconds;
    result.mean_rate.assign(n_axis, std::vector<double>(n_schemes, 0.0));
    result.std_rate.assign(n_axis, std::vector<double>(n_schemes, 0.0));
    for (std::size_t ai = 0; ai < n_axis; ++ai) {
        for (std::size_t s = 0; s < n_schemes; ++s) {
            double mean = 0.0;
            for (int r = 0; r < n_realizations; ++r) mean += rates[ai][r][s];
            mean /= n_realizations;
            double var = 0.0;
            for (int r = 0; r < n_realizations; ++r) {
                const double d = rates[ai][r][s] - mean;
                var += d * d;
            }
            result.mean_rate[ai][s] = mean;
            result.std_rate[ai][s] =
                n_realizations > 1 ? std::sqrt(var / (n_realizations - 1)) : 0.0;
        }
    }
    return result;
}

namespace {

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_csv: cannot open " + path);
    out << "axis,scheme,mean_rate_bps_hz,std_rate_bps_hz,n\n";
    for (std::size_t ai = 0; ai < result.axis_values.size(); ++ai) {
        for (std::size_t s = 0; s < result.scheme_names.size(); ++s) {
            out << fmt9(result.axis_values[ai]) << ',' << result.scheme_names[s] << ','
                << fmt9(result.mean_rate[ai][s]) << ',' << fmt9(result.std_rate[ai][s])
                << ',' << result.n_realizations << '\n';
        }
    }
    if (!out.good()) throw IoError("emit_csv: write failed for " + path);
}

void emit_plot(const SweepResult& result, const std::string& path) {
    if (result.axis_values.empty()) throw ConfigError("emit_plot: no axis points");

    constexpr double width = 840, height = 540;
    constexpr double ml = 90, mr = 180, mt = 40, mb = 70;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = result.axis_values.front(), xmax = result.axis_values.back();
    if (xmax <= xmin) { xmax = xmin + 1.0; }
    double ymin = 0.0, ymax = 1e-12;
    for (const auto& row : result.mean_rate)
        for (double v : row) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    const double ypad = 0.05 * (ymax - ymin + 1e-12);
    ymin -= ypad; ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n";

    // y ticks
    for (int t = 0; t <= 5; ++t) {
        const double y = ymin + (ymax - ymin) * t / 5.0;
        const double yy = py(y);
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << yy << "\" x2=\"" << ml
            << "\" y2=\"" << yy << "\" stroke=\"black\"/>\n"
            << "<text class=\"ytick\" x=\"" << ml - 9 << "\" y=\"" << yy + 4
            << "\" font-size=\"12\" text-anchor=\"end\" data-value=\"" << fmt9(y)
            << "\">" << fmt9(y) << "</text>\n";
    }
    // x ticks at the axis values
    for (double v : result.axis_values) {
        const double xx = px(v);
        svg << "<line x1=\"" << xx << "\" y1=\"" << mt + ph << "\" x2=\"" << xx
            << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << xx << "\" y=\"" << mt + ph + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt9(v) << "</text>\n";
    }

    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 20
        << "\" font-size=\"14\" text-anchor=\"middle\">" << result.axis << "</text>\n"
        << "<text x=\"20\" y=\"" << mt + ph / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << mt + ph / 2 << ")\">Average secrecy rate (bits/s/Hz)</text>\n";

    for (std::size_t s = 0; s < result.scheme_names.size(); ++s) {
        const char* color = palette[s % 8];
        svg << "<g class=\"series\" id=\"" << result.scheme_names[s] << "\">\n";
        if (result.axis_values.size() > 1) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t ai = 0; ai < result.axis_values.size(); ++ai) {
                svg << px(result.axis_values[ai]) << ',' << py(result.mean_rate[ai][s]) << ' ';
            }
            svg << "\"/>\n";
        }
        for (std::size_t ai = 0; ai < result.axis_values.size(); ++ai) {
            svg << "<circle cx=\"" << px(result.axis_values[ai]) << "\" cy=\""
                << py(result.mean_rate[ai][s]) << "\" r=\"3.5\" fill=\"" << color
                << "\" data-value=\"" << fmt9(result.mean_rate[ai][s]) << "\"/>\n";
        }
        svg << "</g>\n";
        const double ly = mt + 18.0 * (s + 1);
        svg << "<rect x=\"" << ml + pw + 14 << "\" y=\"" << ly - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << ml + pw + 32 << "\" y=\"" << ly + 2
            << "\" font-size=\"12\">" << result.scheme_names[s] << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_plot: cannot open " + path);
    out << svg.str();
    if (!out.good()) throw IoError("emit_plot: write failed for " + path);
}

} // namespace secopt
