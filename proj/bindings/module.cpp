// Python bindings for the core operations. Matrices cross the boundary as
// complex128 numpy arrays; result structs are returned as plain dicts so the
// module stays dependency-free on the python side.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paretoprec/baselines.hpp"
#include "paretoprec/channel.hpp"
#include "paretoprec/io.hpp"
#include "paretoprec/metrics.hpp"
#include "paretoprec/pareto.hpp"
#include "paretoprec/verify.hpp"

namespace py = pybind11;
using namespace paretoprec;

namespace {

py::array_t<cxd> to_numpy(const CMatrix& m) {
    py::array_t<cxd> out({m.rows(), m.cols()});
    auto buf = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
    return out;
}

CMatrix from_numpy(const py::array& arr) {
    const py::array_t<cxd> a = py::array_t<cxd>::ensure(arr);
    if (!a || a.ndim() != 2) throw InvalidInput("expected a 2-d complex array");
    auto buf = a.unchecked<2>();
    std::vector<cxd> entries;
    entries.reserve(static_cast<std::size_t>(a.shape(0) * a.shape(1)));
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j) entries.push_back(buf(i, j));
    return CMatrix::checked(static_cast<std::size_t>(a.shape(0)),
                            static_cast<std::size_t>(a.shape(1)), std::move(entries));
}

DecayLaw law_from_name(const std::string& name) {
    if (name == "flat") return DecayLaw::Flat;
    if (name == "inverse") return DecayLaw::Inverse;
    if (name == "inverse-square") return DecayLaw::InverseSquare;
    throw InvalidInput("unknown decay law: " + name);
}

py::dict metrics_dict(const LinkMetrics& m) {
    py::dict d;
    d["g"] = to_numpy(m.g);
    d["signal"] = m.signal;
    d["interference"] = m.interference;
    d["leakage"] = m.leakage;
    d["noise"] = m.noise;
    d["denom"] = m.denom;
    d["sinr"] = m.sinr;
    d["slnr"] = m.slnr;
    d["throughput"] = throughput(m);
    d["per_user_db"] = per_user_db(m);
    d["mean_db"] = mean_db(m);
    return d;
}

py::dict trace_dict(const RefineTrace& t) {
    py::dict d;
    d["iterations"] = t.iterations;
    d["finalize_updates"] = t.finalize_updates;
    d["alpha_history"] = t.alpha_history;
    d["converged"] = t.converged;
    d["final_mu"] = t.final_mu;
    return d;
}

py::dict parametric_dict(const ParametricResult& r) {
    py::dict d;
    d["p"] = to_numpy(r.p);
    d["gamma"] = r.gamma;
    d["kappa"] = r.kappa;
    std::vector<bool> flags(r.near_unit_z.begin(), r.near_unit_z.end());
    d["near_unit_z"] = flags;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pareto-optimal MIMO precoding under per-antenna power constraints";

    py::register_exception<Error>(m, "ParetoprecError");

    py::class_<ChannelInstance>(m, "Channel")
        .def(py::init([](const py::array& h, std::vector<double> omega,
                         std::vector<double> beta) {
                 return make_channel(from_numpy(h), std::move(omega), std::move(beta));
             }),
             py::arg("h"), py::arg("omega"), py::arg("beta"))
        .def_property_readonly("h", [](const ChannelInstance& c) { return to_numpy(c.h); })
        .def_readonly("omega", &ChannelInstance::omega)
        .def_readonly("beta", &ChannelInstance::beta)
        .def_property_readonly("m_tx", &ChannelInstance::m_tx)
        .def_property_readonly("m_ue", &ChannelInstance::m_ue);

    m.def("toy_channel", &toy_channel);
    m.def("gen_gaussian",
          [](std::size_t m_tx, std::size_t m_ue, std::uint64_t seed) {
              return to_numpy(gen_gaussian(m_tx, m_ue, seed));
          },
          py::arg("m_tx"), py::arg("m_ue"), py::arg("seed"));
    m.def("gen_svd_decay",
          [](std::size_t m_tx, std::size_t m_ue, const std::string& law, std::uint64_t seed) {
              return to_numpy(gen_svd_decay(m_tx, m_ue, law_from_name(law), seed));
          },
          py::arg("m_tx"), py::arg("m_ue"), py::arg("law"), py::arg("seed"));
    m.def("noise_from_chi",
          [](const py::array& h, double chi) { return noise_from_chi(from_numpy(h), chi); },
          py::arg("h"), py::arg("chi"));
    m.def("save_channel", &save_channel, py::arg("channel"), py::arg("path"));
    m.def("load_channel", &load_channel, py::arg("path"));
    m.def("save_precoder",
          [](const py::array& p, const std::string& path) { save_precoder(from_numpy(p), path); },
          py::arg("p"), py::arg("path"));
    m.def("load_precoder",
          [](const std::string& path) { return to_numpy(load_precoder(path)); }, py::arg("path"));

    m.def("link_metrics",
          [](const ChannelInstance& c, const py::array& p) {
              return metrics_dict(link_metrics(c, from_numpy(p)));
          },
          py::arg("channel"), py::arg("p"));
    m.def("row_power", [](const py::array& p) { return row_power(from_numpy(p)); });

    m.def("zero_forcing", [](const py::array& h) { return to_numpy(zero_forcing(from_numpy(h))); });
    m.def("slnr_precoder",
          [](const py::array& h, const std::vector<double>& omega) {
              return to_numpy(slnr_precoder(from_numpy(h), omega));
          },
          py::arg("h"), py::arg("omega"));
    m.def("allocate_power",
          [](const py::array& p0, std::vector<double> kappa, const std::vector<double>& beta) {
              return to_numpy(allocate_power(from_numpy(p0), make_allocation(std::move(kappa)),
                                             beta));
          },
          py::arg("p0"), py::arg("kappa"), py::arg("beta"));
    m.def("uniform_kappa",
          [](const py::array& p0) { return uniform_kappa(from_numpy(p0)).kappa; });
    m.def("water_fill_kappa",
          [](const py::array& p_zf, const std::vector<double>& omega, double budget) {
              const WaterFillResult r = water_fill_kappa(from_numpy(p_zf), omega, budget);
              py::dict d;
              d["kappa"] = r.kappa.kappa;
              d["consumed"] = r.consumed;
              d["level"] = r.level;
              return d;
          },
          py::arg("p_zf"), py::arg("omega"), py::arg("budget"));
    m.def("global_scale",
          [](const py::array& p0, const std::vector<double>& beta) {
              return to_numpy(global_scale(from_numpy(p0), beta));
          },
          py::arg("p0"), py::arg("beta"));

    m.def("parametric_precoder",
          [](const ChannelInstance& c, std::vector<double> lam, std::vector<double> mu) {
              return parametric_dict(parametric_precoder(c, {std::move(lam), std::move(mu)}));
          },
          py::arg("channel"), py::arg("lambda_"), py::arg("mu"));
    m.def("direct_precoder",
          [](const ChannelInstance& c, std::vector<double> lam, std::vector<double> mu) {
              return parametric_dict(direct_precoder(c, {std::move(lam), std::move(mu)}));
          },
          py::arg("channel"), py::arg("lambda_"), py::arg("mu"));
    m.def("refine_mu",
          [](const ChannelInstance& c, const std::vector<double>& lam, double delta,
             std::size_t max_iter, double mu_min) {
              RefineConfig cfg{delta, max_iter, mu_min};
              auto [p, trace] = refine_mu(c, lam, cfg);
              return py::make_tuple(to_numpy(p), trace_dict(trace));
          },
          py::arg("channel"), py::arg("lambda_"), py::arg("delta") = 1e-4,
          py::arg("max_iter") = 200, py::arg("mu_min") = 1e-12);
    m.def("refine_mu_fixed",
          [](const ChannelInstance& c, const std::vector<double>& lam, std::size_t n_updates,
             double mu_min) {
              auto [p, trace] = refine_mu_fixed(c, lam, n_updates, mu_min);
              return py::make_tuple(to_numpy(p), trace_dict(trace));
          },
          py::arg("channel"), py::arg("lambda_"), py::arg("n_updates"),
          py::arg("mu_min") = 1e-12);
    m.def("sample_surface",
          [](const ChannelInstance& c, std::size_t n, std::uint64_t seed, double delta,
             std::size_t max_iter, double mu_min) {
              RefineConfig cfg{delta, max_iter, mu_min};
              py::list rows;
              for (const SurfacePoint& pt : sample_surface(c, n, seed, cfg)) {
                  py::dict d;
                  d["lambda"] = pt.lambda;
                  d["sinr"] = pt.sinr;
                  d["db"] = pt.db;
                  d["mean_db"] = pt.mean_db;
                  d["iterations"] = pt.iterations;
                  d["converged"] = pt.converged;
                  d["status"] = pt.status;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("channel"), py::arg("n"), py::arg("seed"), py::arg("delta") = 1e-4,
          py::arg("max_iter") = 200, py::arg("mu_min") = 1e-12);
    m.def("iteration_stats",
          [](const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
             const std::vector<double>& deltas, std::size_t trials, std::uint64_t seed) {
              py::list rows;
              for (const IterationStatsCell& cell : iteration_stats(sizes, deltas, trials, seed)) {
                  py::dict d;
                  d["m_tx"] = cell.m_tx;
                  d["m_ue"] = cell.m_ue;
                  d["delta"] = cell.delta;
                  d["trials"] = cell.trials;
                  d["failures"] = cell.failures;
                  d["mean"] = cell.mean;
                  d["stddev"] = cell.stddev;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("sizes"), py::arg("deltas"), py::arg("trials"), py::arg("seed"));

    m.def("sinr_gradient",
          [](const ChannelInstance& c, const py::array& p, std::size_t user) {
              const GradientSet g = sinr_gradient(c, from_numpy(p));
              return to_numpy(g.gradient(c, user));
          },
          py::arg("channel"), py::arg("p"), py::arg("user"));
    m.def("fd_gradient",
          [](const ChannelInstance& c, const py::array& p, std::size_t user, double step) {
              return to_numpy(fd_gradient(c, from_numpy(p), user, step));
          },
          py::arg("channel"), py::arg("p"), py::arg("user"), py::arg("step") = 1e-6);
    m.def("improve_search",
          [](const ChannelInstance& c, const py::array& p, double upsilon) {
              const SearchOutcome s = improve_search(c, from_numpy(p), upsilon);
              py::dict d;
              d["improved"] = s.improved;
              d["rounds"] = s.rounds;
              d["best_min_ratio"] = s.best_min_ratio;
              d["sinr"] = s.sinr;
              return d;
          },
          py::arg("channel"), py::arg("p"), py::arg("upsilon") = 1e-3);
    m.def("full_power_condition",
          [](const ChannelInstance& c, const py::array& p) {
              const FullPowerCondition f = full_power_condition(link_metrics(c, from_numpy(p)));
              py::dict d;
              d["values"] = f.values;
              d["threshold"] = f.threshold;
              d["flag"] = f.flag;
              return d;
          },
          py::arg("channel"), py::arg("p"));
    m.def("unit_eigenvalue_check",
          [](const ChannelInstance& c, const py::array& p) {
              const UnitEigenResult u = unit_eigenvalue_check(c, from_numpy(p));
              py::dict d;
              d["eigenvalues"] = u.eigenvalues;
              d["min_distance"] = u.min_distance;
              return d;
          },
          py::arg("channel"), py::arg("p"));
    m.def("kruskal_rank",
          [](const py::array& a, std::size_t limit) {
              const KruskalCheck k = kruskal_rank(from_numpy(a), limit);
              py::dict d;
              d["status"] = k.status == KruskalCheck::Status::Full         ? "full"
                            : k.status == KruskalCheck::Status::Deficient ? "deficient"
                                                                           : "undetermined";
              d["order"] = k.order;
              d["checked"] = k.checked;
              return d;
          },
          py::arg("a"), py::arg("limit") = 1000000);
}
