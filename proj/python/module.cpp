#include "dfnnc/channel.hpp"
#include "dfnnc/experiments.hpp"
#include "dfnnc/gaussian_system.hpp"
#include "dfnnc/oneway.hpp"
#include "dfnnc/rate_region.hpp"
#include "dfnnc/search.hpp"
#include "dfnnc/twrc.hpp"

#include <pybind11/functional.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace dfnnc;

namespace {

std::vector<std::pair<double, double>> points(const RateRegion& r) {
  std::vector<std::pair<double, double>> out;
  for (const auto& v : r.vertices) out.emplace_back(v.r1, v.r2);
  return out;
}

RateRegion region_from(const std::vector<std::pair<double, double>>& pts) {
  std::vector<RatePoint> v;
  for (const auto& [a, b] : pts) v.push_back({a, b});
  return convex_hull(std::move(v));
}

std::string run_to_csv(const std::map<std::string, std::string>& settings) {
  const ExperimentConfig cfg = make_config(settings);
  std::ostringstream os;
  switch (cfg.experiment) {
    case Experiment::oneway_sweep:
      write_csv(os, run_oneway_sweep(cfg));
      break;
    case Experiment::twrc_sum_sweep:
      write_csv(os, run_twrc_sum_sweep(cfg));
      break;
    case Experiment::twrc_region:
      write_csv(os, run_twrc_region(cfg));
      break;
  }
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rate computations for Gaussian one-way and two-way relay channels";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<GaussianSystem>(m, "GaussianSystem")
      .def(py::init<std::size_t>(), py::arg("source_count"))
      .def("add_variable",
           [](GaussianSystem& s, std::string name, std::vector<double> c) { return s.add_variable(std::move(name), c); })
      .def("id", &GaussianSystem::id)
      .def("covariance", &GaussianSystem::covariance)
      .def("entropy", [](const GaussianSystem& s, const VarSet& v) {
        const Entropy e = s.entropy(v);
        return py::make_tuple(e.nats, e.rank, e.degenerate);
      })
      .def("mutual_info", &GaussianSystem::conditional_mutual_info, py::arg("a"), py::arg("b"),
           py::arg("c") = VarSet{});

  py::class_<OneWayChannel>(m, "OneWayChannel")
      .def(py::init([](double g, double g1, double g2, double power) { return OneWayChannel{g, g1, g2, power}; }),
           py::arg("g"), py::arg("g1"), py::arg("g2"), py::arg("power"))
      .def_readwrite("g", &OneWayChannel::g)
      .def_readwrite("g1", &OneWayChannel::g1)
      .def_readwrite("g2", &OneWayChannel::g2)
      .def_readwrite("power", &OneWayChannel::power);

  py::class_<TwoWayChannel>(m, "TwoWayChannel")
      .def(py::init([](double g12, double g1r, double g21, double g2r, double gr1, double gr2, double power) {
             return TwoWayChannel{g12, g1r, g21, g2r, gr1, gr2, power};
           }),
           py::arg("g12"), py::arg("g1r"), py::arg("g21"), py::arg("g2r"), py::arg("gr1"), py::arg("gr2"),
           py::arg("power"))
      .def_readwrite("g12", &TwoWayChannel::g12)
      .def_readwrite("g1r", &TwoWayChannel::g1r)
      .def_readwrite("g21", &TwoWayChannel::g21)
      .def_readwrite("g2r", &TwoWayChannel::g2r)
      .def_readwrite("gr1", &TwoWayChannel::gr1)
      .def_readwrite("gr2", &TwoWayChannel::gr2)
      .def_readwrite("power", &TwoWayChannel::power)
      .def("swapped", &TwoWayChannel::swapped);

  m.def("oneway_from_geometry", [](double d, double gamma, double p) { return oneway_from_geometry({d, gamma}, p); },
        py::arg("d"), py::arg("gamma"), py::arg("power"));
  m.def("twrc_from_geometry", [](double d, double gamma, double p) { return twrc_from_geometry({d, gamma}, p); },
        py::arg("d"), py::arg("gamma"), py::arg("power"));

  py::class_<SearchBudget>(m, "SearchBudget")
      .def(py::init<>())
      .def_readwrite("coarse_steps", &SearchBudget::coarse_steps)
      .def_readwrite("refine_rounds", &SearchBudget::refine_rounds)
      .def_readwrite("refine_shrink", &SearchBudget::refine_shrink)
      .def_readwrite("tol", &SearchBudget::tol)
      .def_readwrite("refine_starts", &SearchBudget::refine_starts)
      .def_readwrite("jobs", &SearchBudget::jobs);
  m.def("default_search_budget", &default_search_budget);
  m.def("default_twrc_budget", &default_twrc_budget);

  py::class_<OneWayCombinedParams>(m, "OneWayCombinedParams")
      .def(py::init([](double a1, double b1, double c1, double a2, double b2, double q) {
             return OneWayCombinedParams{a1, b1, c1, a2, b2, q};
           }),
           py::arg("alpha1") = 0.0, py::arg("beta1") = 0.0, py::arg("gamma1") = 0.0, py::arg("alpha2") = 0.0,
           py::arg("beta2") = 0.0, py::arg("compression_noise") = 1.0)
      .def_readwrite("alpha1", &OneWayCombinedParams::alpha1)
      .def_readwrite("beta1", &OneWayCombinedParams::beta1)
      .def_readwrite("gamma1", &OneWayCombinedParams::gamma1)
      .def_readwrite("alpha2", &OneWayCombinedParams::alpha2)
      .def_readwrite("beta2", &OneWayCombinedParams::beta2)
      .def_readwrite("compression_noise", &OneWayCombinedParams::compression_noise);

  m.def("df_rate", &df_rate, py::arg("channel"), py::arg("rho"));
  m.def("nnc_rate", &nnc_rate, py::arg("channel"), py::arg("q"));
  m.def("combined_rate_closed_form", &combined_rate_closed_form);
  m.def("combined_rate_via_engine", &combined_rate_via_engine);
  m.def("oneway_cutset_bound", &oneway_cutset_bound);
  m.def("optimize_df_rate", [](const OneWayChannel& ch) {
    const auto r = optimize_df_rate(ch);
    return py::make_tuple(r.rate, r.rho);
  });
  m.def("optimize_nnc_rate", [](const OneWayChannel& ch) {
    const auto r = optimize_nnc_rate(ch);
    return py::make_tuple(r.rate, r.compression_noise);
  });
  m.def(
      "optimize_combined_rate",
      [](const OneWayChannel& ch, const SearchBudget& b) {
        py::gil_scoped_release release;
        const auto r = optimize_combined_rate(ch, b);
        return std::make_pair(r.rate, r.params);
      },
      py::arg("channel"), py::arg("budget") = default_search_budget());

  py::class_<TwrcParams>(m, "TwrcParams")
      .def(py::init<>())
      .def_readwrite("alpha1", &TwrcParams::alpha1)
      .def_readwrite("beta1", &TwrcParams::beta1)
      .def_readwrite("gamma1", &TwrcParams::gamma1)
      .def_readwrite("delta1", &TwrcParams::delta1)
      .def_readwrite("alpha2", &TwrcParams::alpha2)
      .def_readwrite("beta2", &TwrcParams::beta2)
      .def_readwrite("gamma2", &TwrcParams::gamma2)
      .def_readwrite("delta2", &TwrcParams::delta2)
      .def_readwrite("alpha31", &TwrcParams::alpha31)
      .def_readwrite("alpha32", &TwrcParams::alpha32)
      .def_readwrite("beta3", &TwrcParams::beta3)
      .def_readwrite("gamma3", &TwrcParams::gamma3)
      .def_readwrite("delta3", &TwrcParams::delta3)
      .def_readwrite("qhat", &TwrcParams::qhat)
      .def_readwrite("qtilde", &TwrcParams::qtilde);

  m.def("constraint_set", [](const TwoWayChannel& ch, const TwrcParams& p) {
    const ConstraintSet cs = constraint_set(ch, p);
    return std::make_pair(cs.values, cs.mirrored);
  });
  m.def("region_at", [](const TwoWayChannel& ch, const TwrcParams& p) { return points(region_at(ch, p)); });

  const auto scheme_region = [&m](const char* name, TwrcScheme scheme) {
    m.def(
        name,
        [scheme](const TwoWayChannel& ch, const SearchBudget& b, const std::vector<double>& w) {
          py::gil_scoped_release release;
          return points(search_region(ch, scheme, b, w).region);
        },
        py::arg("channel"), py::arg("budget") = default_search_budget(),
        py::arg("weights") = default_region_weights());
  };
  scheme_region("rankov_df_region", TwrcScheme::rankov_df);
  scheme_region("xie_df_region", TwrcScheme::xie_df);
  scheme_region("lnnc_region", TwrcScheme::lnnc);
  m.def(
      "combined_region",
      [](const TwoWayChannel& ch, const SearchBudget& b, const std::vector<double>& w) {
        py::gil_scoped_release release;
        return points(combined_region(ch, b, w));
      },
      py::arg("channel"), py::arg("budget") = default_twrc_budget(), py::arg("weights") = default_region_weights());

  m.def("convex_hull", [](const std::vector<std::pair<double, double>>& pts) { return points(region_from(pts)); });
  m.def("sum_rate", [](const std::vector<std::pair<double, double>>& pts) { return sum_rate(region_from(pts)); });
  m.def("weighted_sum_max", [](const std::vector<std::pair<double, double>>& pts, double w) {
    return weighted_sum_max(region_from(pts), w);
  });
  m.def("area", [](const std::vector<std::pair<double, double>>& pts) { return area(region_from(pts)); });
  m.def("polytope_vertices", [](const std::vector<std::tuple<int, int, double>>& rows) {
    RatePolytope p;
    for (const auto& [a, b, c] : rows) p.constraints.push_back({a, b, c});
    std::vector<std::pair<double, double>> out;
    for (const auto& v : polytope_vertices(p)) out.emplace_back(v.r1, v.r2);
    return out;
  });

  m.def(
      "run_experiment_csv",
      [](const std::map<std::string, std::string>& settings) {
        py::gil_scoped_release release;
        return run_to_csv(settings);
      },
      py::arg("settings"), "Runs one experiment and returns its CSV text. Keys match the config file.");
  m.def("format_number", &format_number);
}
