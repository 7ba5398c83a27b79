// Command-line harness. Every run is a deterministic function of its full
// flag set (including --seed); numeric output carries 17 significant digits
// so results can be consumed without precision loss.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paretoprec/baselines.hpp"
#include "paretoprec/channel.hpp"
#include "paretoprec/io.hpp"
#include "paretoprec/metrics.hpp"
#include "paretoprec/parallel.hpp"
#include "paretoprec/pareto.hpp"
#include "paretoprec/rng.hpp"
#include "paretoprec/verify.hpp"

namespace pp = paretoprec;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumeric = 2;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t parse_count(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw pp::InvalidInput("expected a nonnegative integer, got: " + text);
    return std::stoul(text);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw pp::InvalidInput("bad number in list: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw pp::InvalidInput("empty numeric list");
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = item.find('x');
        if (x == std::string::npos) throw pp::InvalidInput("size must look like 24x8: " + item);
        out.emplace_back(parse_count(item.substr(0, x)), parse_count(item.substr(x + 1)));
    }
    if (out.empty()) throw pp::InvalidInput("empty size list");
    return out;
}

pp::DecayLaw parse_law(const std::string& name) {
    if (name == "flat") return pp::DecayLaw::Flat;
    if (name == "inverse") return pp::DecayLaw::Inverse;
    if (name == "inverse-square") return pp::DecayLaw::InverseSquare;
    throw pp::InvalidInput("unknown decay law: " + name);
}

// Writer that renders rows either as CSV (fixed header) or as a JSON array.
class TableWriter {
public:
    TableWriter(std::string format, std::string path)
        : json_(format == "json"), path_(std::move(path)) {
        if (!json_ && format != "csv") throw pp::InvalidInput("format must be csv or json");
    }

    void header(const std::vector<std::string>& cols) { cols_ = cols; }

    void row(const json& obj) { rows_.push_back(obj); }

    static std::string csv_escape(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    void finish() {
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!path_.empty()) {
            file.open(path_, std::ios::binary);
            if (!file) throw pp::IoError("cannot write " + path_);
            out = &file;
        }
        if (json_) {
            json doc;
            doc["rows"] = rows_;
            *out << doc.dump(2) << "\n";
            return;
        }
        for (std::size_t i = 0; i < cols_.size(); ++i)
            *out << (i ? "," : "") << cols_[i];
        *out << "\n";
        for (const json& r : rows_) {
            for (std::size_t i = 0; i < cols_.size(); ++i) {
                if (i) *out << ",";
                const json& v = r.contains(cols_[i]) ? r.at(cols_[i]) : json();
                if (v.is_number_float())
                    *out << fmt17(v.get<double>());
                else if (v.is_string())
                    *out << csv_escape(v.get<std::string>());
                else if (v.is_boolean())
                    *out << (v.get<bool>() ? 1 : 0);
                else if (v.is_number())
                    *out << v.dump();
                else if (!v.is_null())
                    *out << v.dump();
            }
            *out << "\n";
        }
    }

private:
    bool json_;
    std::string path_;
    std::vector<std::string> cols_;
    std::vector<json> rows_;
};

void put_vector(json& row, const std::string& prefix, const std::vector<double>& v,
                std::vector<std::string>* cols = nullptr) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string name = prefix + "_" + std::to_string(k + 1);
        row[name] = v[k];
        if (cols) cols->push_back(name);
    }
}

std::vector<std::string> vector_cols(const std::string& prefix, std::size_t n) {
    std::vector<std::string> cols;
    for (std::size_t k = 0; k < n; ++k) cols.push_back(prefix + "_" + std::to_string(k + 1));
    return cols;
}

// ---- gen-channel ----

struct GenChannelArgs {
    std::vector<std::size_t> gaussian;
    std::vector<std::string> svd_decay;
    bool toy = false;
    std::uint64_t seed = 0;
    double chi = 0.0;
    std::string omega_list;
    std::string beta_mode = "per-antenna";
    std::string output;
};

int run_gen_channel(const GenChannelArgs& a) {
    int sources = (a.gaussian.empty() ? 0 : 1) + (a.svd_decay.empty() ? 0 : 1) + (a.toy ? 1 : 0);
    if (sources != 1) {
        std::cerr << "gen-channel: exactly one of --gaussian/--svd-decay/--toy required\n";
        return kExitInput;
    }

    pp::CMatrix h;
    if (a.toy) {
        h = pp::toy_channel().h;
    } else if (!a.gaussian.empty()) {
        h = pp::gen_gaussian(a.gaussian[0], a.gaussian[1], a.seed);
    } else {
        h = pp::gen_svd_decay(parse_count(a.svd_decay[1]), parse_count(a.svd_decay[2]),
                              parse_law(a.svd_decay[0]), a.seed);
    }

    std::vector<double> omega;
    if (!a.omega_list.empty()) {
        omega = parse_double_list(a.omega_list);
        if (omega.size() == 1) omega.assign(h.cols(), omega[0]);
    } else if (a.chi > 0.0) {
        omega = pp::noise_from_chi(h, a.chi);
    } else {
        omega.assign(h.cols(), 1.0);
    }

    pp::BetaMode mode;
    if (a.beta_mode == "per-antenna")
        mode = pp::BetaMode::UnitPerAntenna;
    else if (a.beta_mode == "total")
        mode = pp::BetaMode::UnitTotal;
    else {
        std::cerr << "gen-channel: --beta-mode must be per-antenna or total\n";
        return kExitInput;
    }

    const pp::ChannelInstance c =
        pp::make_channel(h, omega, pp::default_beta(h.rows(), mode));
    pp::save_channel(c, a.output);
    std::cout << "m_tx=" << c.m_tx() << " m_ue=" << c.m_ue()
              << " fro_norm=" << fmt17(c.h.fro_norm()) << " -> " << a.output << "\n";
    return kExitOk;
}

// ---- baseline ----

struct BaselineArgs {
    std::string channel;
    std::string method = "zf";
    std::string alloc = "uniform";
    double budget = 0.0;  // waterfill budget; defaults to sum(beta)
    std::string output;
    std::string format = "csv";
};

int run_baseline(const BaselineArgs& a) {
    const pp::ChannelInstance c = pp::load_channel(a.channel);

    pp::Precoder base;
    if (a.method == "zf")
        base = pp::zero_forcing(c.h);
    else if (a.method == "slnr")
        base = pp::slnr_precoder(c.h, c.omega);
    else
        throw pp::InvalidInput("--method must be zf or slnr");

    pp::Precoder p;
    std::vector<double> kappa;
    if (a.alloc == "global") {
        p = pp::global_scale(base, c.beta);
        // report the realized column power fractions
        std::vector<double> cp(p.cols(), 0.0);
        double tot = 0.0;
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) {
                cp[j] += std::norm(p(i, j));
                tot += std::norm(p(i, j));
            }
        for (double& v : cp) v /= tot;
        kappa = cp;
    } else {
        pp::PowerAllocation alloc;
        if (a.alloc == "uniform") {
            alloc = pp::uniform_kappa(base);
        } else if (a.alloc == "waterfill") {
            double budget = a.budget;
            if (!(budget > 0.0))
                for (double b : c.beta) budget += b;
            // water-filling weights are always derived from the zero-forcing
            // columns, also when allocating the SLNR precoder
            alloc = pp::water_fill_kappa(pp::zero_forcing(c.h), c.omega, budget).kappa;
        } else if (a.alloc.rfind("kappa=", 0) == 0) {
            alloc = pp::make_allocation(parse_double_list(a.alloc.substr(6)));
        } else {
            throw pp::InvalidInput("--alloc must be uniform, waterfill, global or kappa=...");
        }
        kappa = alloc.kappa;
        p = pp::allocate_power(base, alloc, c.beta);
    }

    const pp::LinkMetrics m = pp::link_metrics(c, p);
    TableWriter w(a.format, a.output);
    std::vector<std::string> cols{"method", "alloc"};
    for (const std::string& s : vector_cols("kappa", c.m_ue())) cols.push_back(s);
    for (const std::string& s : vector_cols("sinr", c.m_ue())) cols.push_back(s);
    for (const std::string& s : vector_cols("db", c.m_ue())) cols.push_back(s);
    cols.push_back("mean_db");
    for (const std::string& s : vector_cols("rowpower", c.m_tx())) cols.push_back(s);
    w.header(cols);

    json row;
    row["method"] = a.method;
    row["alloc"] = a.alloc;
    put_vector(row, "kappa", kappa);
    put_vector(row, "sinr", m.sinr);
    put_vector(row, "db", pp::per_user_db(m));
    row["mean_db"] = pp::mean_db(m);
    put_vector(row, "rowpower", pp::row_power(p));
    w.row(row);
    w.finish();
    return kExitOk;
}

// ---- pareto ----

struct ParetoArgs {
    std::string channel;
    std::string lambda = "uniform";
    std::string iters = "converge";
    double delta = 1e-4;
    double mu_min = 1e-12;
    std::size_t max_iter = 200;
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "csv";
};

int run_pareto(const ParetoArgs& a) {
    const pp::ChannelInstance c = pp::load_channel(a.channel);

    std::vector<std::vector<double>> lambdas;
    if (a.lambda == "uniform") {
        lambdas.push_back(std::vector<double>(c.m_ue(), 1.0 / static_cast<double>(c.m_ue())));
    } else if (a.lambda.rfind("random", 0) == 0) {
        const std::size_t n = parse_count(a.lambda.substr(6));
        if (n < 1) throw pp::InvalidInput("--lambda randomN needs N >= 1");
        for (std::size_t i = 0; i < n; ++i) {
            pp::CounterRng rng(a.seed, i);
            std::vector<double> lam(c.m_ue());
            double sum = 0.0;
            for (double& l : lam) {
                l = rng.next_unit();
                sum += l;
            }
            for (double& l : lam) l /= sum;
            lambdas.push_back(std::move(lam));
        }
    } else {
        std::vector<double> lam = parse_double_list(a.lambda);
        if (lam.size() != c.m_ue())
            throw pp::InvalidInput("--lambda list length must equal m_ue");
        lambdas.push_back(std::move(lam));
    }

    std::optional<std::size_t> fixed_updates;
    if (a.iters != "converge") fixed_updates = parse_count(a.iters);

    TableWriter w(a.format, a.output);
    std::vector<std::string> cols = vector_cols("lambda", c.m_ue());
    cols.push_back("iters");
    cols.push_back("converged");
    for (const std::string& s : vector_cols("sinr", c.m_ue())) cols.push_back(s);
    for (const std::string& s : vector_cols("db", c.m_ue())) cols.push_back(s);
    cols.push_back("mean_db");
    cols.push_back("alpha_min");
    cols.push_back("alpha_max");
    cols.push_back("status");
    w.header(cols);

    std::size_t failures = 0;
    for (const std::vector<double>& lam : lambdas) {
        json row;
        put_vector(row, "lambda", lam);
        try {
            pp::Precoder p;
            pp::RefineTrace trace;
            if (fixed_updates) {
                std::tie(p, trace) = pp::refine_mu_fixed(c, lam, *fixed_updates, a.mu_min);
            } else {
                pp::RefineConfig cfg;
                cfg.delta = a.delta;
                cfg.max_iter = a.max_iter;
                cfg.mu_min = a.mu_min;
                std::tie(p, trace) = pp::refine_mu(c, lam, cfg);
            }
            const pp::LinkMetrics m = pp::link_metrics(c, p);
            const std::vector<double>& alpha = trace.alpha_history.back();
            row["iters"] = trace.iterations;
            row["converged"] = trace.converged;
            put_vector(row, "sinr", m.sinr);
            put_vector(row, "db", pp::per_user_db(m));
            row["mean_db"] = pp::mean_db(m);
            row["alpha_min"] = *std::min_element(alpha.begin(), alpha.end());
            row["alpha_max"] = *std::max_element(alpha.begin(), alpha.end());
            row["status"] = (!fixed_updates && !trace.converged) ? "no_convergence" : "ok";
            if (a.format == "json") {
                row["alpha_history"] = trace.alpha_history;
                row["finalize_updates"] = trace.finalize_updates;
                row["final_mu"] = trace.final_mu;
            }
            if (!fixed_updates && !trace.converged) ++failures;
        } catch (const pp::Error& e) {
            row["status"] = e.what();
            ++failures;
        }
        w.row(row);
    }
    w.finish();
    return failures == lambdas.size() ? kExitNumeric : kExitOk;
}

// ---- surface ----

struct SurfaceArgs {
    std::string channel;
    std::size_t points = 1000;
    double delta = 1e-4;
    double mu_min = 1e-12;
    std::size_t max_iter = 200;
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "csv";
};

int run_surface(const SurfaceArgs& a) {
    const pp::ChannelInstance c = pp::load_channel(a.channel);
    pp::RefineConfig cfg;
    cfg.delta = a.delta;
    cfg.max_iter = a.max_iter;
    cfg.mu_min = a.mu_min;
    const std::vector<pp::SurfacePoint> pts = pp::sample_surface(c, a.points, a.seed, cfg);

    TableWriter w(a.format, a.output);
    std::vector<std::string> cols = vector_cols("lambda", c.m_ue());
    for (const std::string& s : vector_cols("sinr", c.m_ue())) cols.push_back(s);
    for (const std::string& s : vector_cols("db", c.m_ue())) cols.push_back(s);
    cols.push_back("mean_db");
    cols.push_back("iters");
    cols.push_back("converged");
    cols.push_back("status");
    w.header(cols);

    std::size_t failures = 0;
    for (const pp::SurfacePoint& pt : pts) {
        json row;
        put_vector(row, "lambda", pt.lambda);
        if (pt.status == "ok" || pt.status == "no_convergence") {
            put_vector(row, "sinr", pt.sinr);
            put_vector(row, "db", pt.db);
            row["mean_db"] = pt.mean_db;
        } else {
            ++failures;
        }
        row["iters"] = pt.iterations;
        row["converged"] = pt.converged;
        row["status"] = pt.status;
        w.row(row);
    }
    w.finish();
    return failures == pts.size() ? kExitNumeric : kExitOk;
}

// ---- sweep ----

struct SweepArgs {
    std::string sizes = "60x24";
    std::string chi_list = "0.03,0.1,0.3,1";
    std::string law = "inverse-square";
    std::string alloc = "uniform";
    std::size_t seeds = 10;
    std::uint64_t seed = 0;
    double delta = 1e-4;
    std::string output;
    std::string format = "csv";
};

int run_sweep(const SweepArgs& a) {
    const auto sizes = parse_sizes(a.sizes);
    const std::vector<double> chis = parse_double_list(a.chi_list);
    if (a.alloc != "uniform" && a.alloc != "waterfill")
        throw pp::InvalidInput("--alloc must be uniform or waterfill");

    struct Cell {
        std::size_t m_tx, m_ue, seed_idx;
        double chi;
        json row;
        bool failed = false;
    };
    std::vector<Cell> cells;
    for (const auto& [mt, mu] : sizes)
        for (double chi : chis)
            for (std::size_t s = 0; s < a.seeds; ++s)
                cells.push_back({mt, mu, s, chi, json{}, false});

    pp::run_indexed(cells.size(), [&](std::size_t i) {
        Cell& cell = cells[i];
        json& row = cell.row;
        row["m_tx"] = cell.m_tx;
        row["m_ue"] = cell.m_ue;
        row["law"] = a.law;
        row["chi"] = cell.chi;
        row["seed"] = cell.seed_idx;
        try {
            pp::CounterRng rng(a.seed, i);
            pp::CMatrix h = a.law == "gaussian"
                                ? pp::gen_gaussian(cell.m_tx, cell.m_ue, rng.next_u64())
                                : pp::gen_svd_decay(cell.m_tx, cell.m_ue, parse_law(a.law),
                                                    rng.next_u64());
            const pp::ChannelInstance c = pp::make_channel(
                h, pp::noise_from_chi(h, cell.chi),
                pp::default_beta(cell.m_tx, pp::BetaMode::UnitTotal));

            pp::RefineConfig cfg;
            cfg.delta = a.delta;
            const std::vector<double> lam(cell.m_ue,
                                          1.0 / static_cast<double>(cell.m_ue));
            auto [p, trace] = pp::refine_mu(c, lam, cfg);
            const pp::LinkMetrics par = pp::link_metrics(c, p);

            const pp::Precoder zf = pp::zero_forcing(c.h);
            const pp::Precoder slnr = pp::slnr_precoder(c.h, c.omega);
            pp::PowerAllocation kzf, kslnr;
            if (a.alloc == "uniform") {
                kzf = pp::uniform_kappa(zf);
                kslnr = pp::uniform_kappa(slnr);
            } else {
                double budget = 0.0;
                for (double b : c.beta) budget += b;
                kzf = pp::water_fill_kappa(zf, c.omega, budget).kappa;
                kslnr = kzf;  // ZF-derived weights reused for SLNR
            }
            const pp::LinkMetrics mzf = pp::link_metrics(c, pp::allocate_power(zf, kzf, c.beta));
            const pp::LinkMetrics mslnr =
                pp::link_metrics(c, pp::allocate_power(slnr, kslnr, c.beta));

            const pp::GainStats gzf = pp::gains(par, mzf);
            const pp::GainStats gslnr = pp::gains(par, mslnr);
            row["parametric_mean_db"] = pp::mean_db(par);
            row["zf_mean_db"] = pp::mean_db(mzf);
            row["slnr_mean_db"] = pp::mean_db(mslnr);
            row["gain_avg_zf"] = gzf.avg;
            row["gain_min_zf"] = gzf.min;
            row["gain_avg_slnr"] = gslnr.avg;
            row["gain_min_slnr"] = gslnr.min;
            row["iters"] = trace.iterations;
            row["converged"] = trace.converged;
            row["status"] = "ok";
        } catch (const std::exception& e) {
            row["status"] = e.what();
            cell.failed = true;
        }
    });

    TableWriter w(a.format, a.output);
    w.header({"m_tx", "m_ue", "law", "chi", "seed", "parametric_mean_db", "zf_mean_db",
              "slnr_mean_db", "gain_avg_zf", "gain_min_zf", "gain_avg_slnr", "gain_min_slnr",
              "iters", "converged", "status"});
    std::size_t failures = 0;
    for (const Cell& cell : cells) {
        if (cell.failed) ++failures;
        w.row(cell.row);
    }
    w.finish();
    return failures == cells.size() ? kExitNumeric : kExitOk;
}

// ---- iteration-stats ----

struct IterArgs {
    std::string sizes = "8x2,24x8";
    std::string deltas = "1e-2,1e-4,1e-6,1e-8";
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "csv";
};

int run_iteration_stats(const IterArgs& a) {
    const auto cells =
        pp::iteration_stats(parse_sizes(a.sizes), parse_double_list(a.deltas), a.trials, a.seed);
    TableWriter w(a.format, a.output);
    w.header({"m_tx", "m_ue", "delta", "trials", "failures", "mean_iters", "stddev_iters"});
    for (const pp::IterationStatsCell& cell : cells) {
        json row;
        row["m_tx"] = cell.m_tx;
        row["m_ue"] = cell.m_ue;
        row["delta"] = cell.delta;
        row["trials"] = cell.trials;
        row["failures"] = cell.failures;
        row["mean_iters"] = cell.mean;
        row["stddev_iters"] = cell.stddev;
        w.row(row);
    }
    w.finish();
    return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
    std::string channel;
    std::string precoder;
    double upsilon = 1e-3;
    double slack_tol = 1e-6;
    std::string output;
    std::string format = "csv";
};

int run_verify(const VerifyArgs& a) {
    const pp::ChannelInstance c = pp::load_channel(a.channel);
    const pp::Precoder p = pp::load_precoder(a.precoder);
    if (p.rows() != c.m_tx() || p.cols() != c.m_ue())
        throw pp::InvalidInput("precoder shape does not match channel");

    const pp::LinkMetrics m = pp::link_metrics(c, p);
    TableWriter w(a.format, a.output);
    w.header({"key", "value"});
    auto kv = [&](const std::string& k, const json& v) {
        json row;
        row["key"] = k;
        row["value"] = v.is_number_float() ? json(fmt17(v.get<double>())) : v;
        w.row(row);
    };

    for (std::size_t k = 0; k < m.users(); ++k) kv("sinr_" + std::to_string(k + 1), m.sinr[k]);
    const std::vector<double> pw = pp::row_power(p);
    for (std::size_t i = 0; i < pw.size(); ++i) kv("rowpower_" + std::to_string(i + 1), pw[i]);
    kv("feasible", pp::check_feasible(p, c.beta).feasible ? "1" : "0");

    const pp::FullPowerCondition fpc = pp::full_power_condition(m);
    for (std::size_t k = 0; k < fpc.values.size(); ++k)
        kv("fullpower_value_" + std::to_string(k + 1), fpc.values[k]);
    kv("fullpower_threshold", fpc.threshold);
    kv("fullpower_flag", fpc.flag ? "1" : "0");

    try {
        const pp::UnitEigenResult ue = pp::unit_eigenvalue_check(c, p);
        kv("unit_eig_min_distance", ue.min_distance);
        for (std::size_t k = 0; k < ue.eigenvalues.size(); ++k) {
            kv("eig_" + std::to_string(k + 1) + "_re", ue.eigenvalues[k].real());
            kv("eig_" + std::to_string(k + 1) + "_im", ue.eigenvalues[k].imag());
        }
    } catch (const pp::Error& e) {
        kv("unit_eig_min_distance", std::string("error: ") + e.what());
    }

    try {
        const pp::SearchOutcome s = pp::improve_search(c, p, a.upsilon, a.slack_tol);
        kv("improvement_found", s.improved ? "1" : "0");
        kv("improvement_rounds", s.rounds);
        kv("improvement_best_min_ratio", s.best_min_ratio);
    } catch (const pp::Error& e) {
        kv("improvement_found", std::string("error: ") + e.what());
    }
    w.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto-optimal MIMO precoding under per-antenna power constraints"};
    app.require_subcommand(1);

    GenChannelArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("gen-channel", "generate a channel JSON file");
    cmd_gen->add_option("--gaussian", gen.gaussian, "MTX MUE")->expected(2);
    cmd_gen->add_option("--svd-decay", gen.svd_decay, "LAW MTX MUE")->expected(3);
    cmd_gen->add_flag("--toy", gen.toy, "fixed 8x3 real channel");
    cmd_gen->add_option("--seed", gen.seed);
    cmd_gen->add_option("--chi", gen.chi, "noise from chi * ||H||_F / m_ue");
    cmd_gen->add_option("--omega", gen.omega_list, "explicit noise value(s)");
    cmd_gen->add_option("--beta-mode", gen.beta_mode, "per-antenna | total");
    cmd_gen->add_option("--output", gen.output)->required();

    BaselineArgs bl;
    CLI::App* cmd_bl = app.add_subcommand("baseline", "ZF / SLNR reference precoders");
    cmd_bl->add_option("--channel", bl.channel)->required();
    cmd_bl->add_option("--method", bl.method, "zf | slnr");
    cmd_bl->add_option("--alloc", bl.alloc, "uniform | waterfill | global | kappa=...");
    cmd_bl->add_option("--budget", bl.budget, "waterfill power budget (default sum beta)");
    cmd_bl->add_option("--output", bl.output);
    cmd_bl->add_option("--format", bl.format, "csv | json");

    ParetoArgs pa;
    CLI::App* cmd_pa = app.add_subcommand("pareto", "parametric boundary precoders");
    cmd_pa->add_option("--channel", pa.channel)->required();
    cmd_pa->add_option("--lambda", pa.lambda, "uniform | L1,L2,... | randomN");
    cmd_pa->add_option("--iters", pa.iters, "0 | 1 | ... | converge");
    cmd_pa->add_option("--delta", pa.delta);
    cmd_pa->add_option("--mu-min", pa.mu_min);
    cmd_pa->add_option("--max-iter", pa.max_iter);
    cmd_pa->add_option("--seed", pa.seed);
    cmd_pa->add_option("--output", pa.output);
    cmd_pa->add_option("--format", pa.format, "csv | json");

    SurfaceArgs su;
    CLI::App* cmd_su = app.add_subcommand("surface", "random-lambda boundary sampling");
    cmd_su->add_option("--channel", su.channel)->required();
    cmd_su->add_option("--points", su.points);
    cmd_su->add_option("--delta", su.delta);
    cmd_su->add_option("--mu-min", su.mu_min);
    cmd_su->add_option("--max-iter", su.max_iter);
    cmd_su->add_option("--seed", su.seed);
    cmd_su->add_option("--output", su.output);
    cmd_su->add_option("--format", su.format, "csv | json");

    SweepArgs sw;
    CLI::App* cmd_sw = app.add_subcommand("sweep", "noise/size sweep against baselines");
    cmd_sw->add_option("--sizes", sw.sizes, "e.g. 60x24,192x32");
    cmd_sw->add_option("--chi-list", sw.chi_list);
    cmd_sw->add_option("--law", sw.law, "flat | inverse | inverse-square | gaussian");
    cmd_sw->add_option("--alloc", sw.alloc, "uniform | waterfill");
    cmd_sw->add_option("--seeds", sw.seeds, "number of seeded repetitions per cell");
    cmd_sw->add_option("--seed", sw.seed);
    cmd_sw->add_option("--delta", sw.delta);
    cmd_sw->add_option("--output", sw.output);
    cmd_sw->add_option("--format", sw.format, "csv | json");

    IterArgs it;
    CLI::App* cmd_it = app.add_subcommand("iteration-stats", "refinement iteration statistics");
    cmd_it->add_option("--sizes", it.sizes);
    cmd_it->add_option("--deltas", it.deltas);
    cmd_it->add_option("--trials", it.trials);
    cmd_it->add_option("--seed", it.seed);
    cmd_it->add_option("--output", it.output);
    cmd_it->add_option("--format", it.format, "csv | json");

    VerifyArgs ve;
    CLI::App* cmd_ve = app.add_subcommand("verify", "optimality diagnostics for a precoder");
    cmd_ve->add_option("--channel", ve.channel)->required();
    cmd_ve->add_option("--precoder", ve.precoder)->required();
    cmd_ve->add_option("--upsilon", ve.upsilon, "joint improvement factor threshold");
    cmd_ve->add_option("--slack-tol", ve.slack_tol);
    cmd_ve->add_option("--output", ve.output);
    cmd_ve->add_option("--format", ve.format, "csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (cmd_gen->parsed()) return run_gen_channel(gen);
        if (cmd_bl->parsed()) return run_baseline(bl);
        if (cmd_pa->parsed()) return run_pareto(pa);
        if (cmd_su->parsed()) return run_surface(su);
        if (cmd_sw->parsed()) return run_sweep(sw);
        if (cmd_it->parsed()) return run_iteration_stats(it);
        if (cmd_ve->parsed()) return run_verify(ve);
    } catch (const pp::InvalidInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const pp::IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const pp::DimensionMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const pp::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
