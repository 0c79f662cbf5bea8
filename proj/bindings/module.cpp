#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <tuple>

#include "hetcache/analysis.hpp"
#include "hetcache/converse.hpp"
#include "hetcache/model.hpp"
#include "hetcache/scheme.hpp"

namespace py = pybind11;
using namespace hetcache;

namespace {

DemandClass parse_class(const std::string& s) {
  if (s == "all") return DemandClass::all;
  if (s == "common") return DemandClass::common_only;
  if (s == "unique") return DemandClass::unique_only;
  throw std::invalid_argument("demand class must be all, common, or unique");
}

std::vector<double> grid_or_default(const SystemConfig& cfg,
                                    const std::optional<std::vector<double>>& grid,
                                    int points) {
  return grid ? *grid : default_m_grid(cfg, points);
}

}  // namespace

PYBIND11_MODULE(_hetcache, m) {
  m.doc() = "coded caching with common and group-unique file classes";

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init([](int K, int G, int Nc, int Nu, double M, std::int64_t B) {
             return SystemConfig{K, G, Nc, Nu, M, B};
           }),
           py::arg("K"), py::arg("G"), py::arg("Nc"), py::arg("Nu"), py::arg("M"),
           py::arg("B") = 0)
      .def_readwrite("K", &SystemConfig::K)
      .def_readwrite("G", &SystemConfig::G)
      .def_readwrite("Nc", &SystemConfig::Nc)
      .def_readwrite("Nu", &SystemConfig::Nu)
      .def_readwrite("M", &SystemConfig::M)
      .def_readwrite("B", &SystemConfig::B)
      .def("users_per_group", &SystemConfig::users_per_group)
      .def("total_files", &SystemConfig::total_files)
      .def("__repr__", [](const SystemConfig& c) {
        return "SystemConfig(K=" + std::to_string(c.K) + ", G=" + std::to_string(c.G) +
               ", Nc=" + std::to_string(c.Nc) + ", Nu=" + std::to_string(c.Nu) +
               ", M=" + std::to_string(c.M) + ", B=" + std::to_string(c.B) + ")";
      });

  m.def("validate", &validate_config, py::arg("cfg"),
        "list of violated constraints; empty means valid");

  m.def(
      "demand_count",
      [](const SystemConfig& cfg, const std::string& cls) {
        return demand_count(cfg, parse_class(cls));
      },
      py::arg("cfg"), py::arg("cls") = "all");

  m.def("beta_interval", &beta_interval, py::arg("cfg"));

  m.def("load_formula", &load_formula, py::arg("cfg"), py::arg("beta"), py::arg("alpha"),
        "worst-case delivery load of the split scheme at a symmetric demand");

  m.def(
      "achievable",
      [](const SystemConfig& cfg) {
        AchievableResult r = achievable_bound(cfg);
        py::dict d;
        d["beta"] = r.beta;
        d["value"] = r.value;
        d["alpha"] = r.alpha;
        return d;
      },
      py::arg("cfg"), "optimized upper bound on the worst-case load");

  m.def(
      "converse",
      [](const SystemConfig& cfg) {
        ConverseResult r = converse_bound(cfg);
        py::dict d;
        d["beta"] = r.beta;
        d["value"] = r.value;
        d["convex"] = r.convex;
        return d;
      },
      py::arg("cfg"), "optimized lower bound on the worst-case load");

  m.def(
      "m_grid",
      [](const SystemConfig& cfg, int points) { return default_m_grid(cfg, points); },
      py::arg("cfg"), py::arg("points") = 101);

  m.def(
      "sweep",
      [](const SystemConfig& cfg, const std::optional<std::vector<double>>& grid,
         int points) {
        py::list rows;
        for (const SweepRow& r : gap_sweep(cfg, grid_or_default(cfg, grid, points))) {
          py::dict d;
          d["M"] = r.M;
          d["beta_ach"] = r.beta_ach;
          d["achievable"] = r.achievable;
          d["beta_conv"] = r.beta_conv;
          d["converse"] = r.converse;
          d["gap"] = r.gap;
          rows.append(d);
        }
        return rows;
      },
      py::arg("cfg"), py::arg("grid") = py::none(), py::arg("points") = 101);

  m.def(
      "sweep_csv",
      [](const SystemConfig& cfg, const std::optional<std::vector<double>>& grid,
         int points) { return sweep_csv(gap_sweep(cfg, grid_or_default(cfg, grid, points))); },
      py::arg("cfg"), py::arg("grid") = py::none(), py::arg("points") = 101);

  m.def("fixed_beta_gap", &fixed_beta_gap, py::arg("cfg"), py::arg("M"),
        "achievable/converse ratio with both sides pinned to the converse-optimal split");

  m.def(
      "integer_splits",
      [](const SystemConfig& cfg) {
        std::vector<std::tuple<int, int, double>> out;
        for (const SplitParams& sp : integer_splits(cfg))
          out.push_back({sp.t_c_int(), sp.t_u_int(), sp.beta});
        return out;
      },
      py::arg("cfg"), "(t_c, t_u, beta) triples that exhaust the memory");

  m.def(
      "worst_case",
      [](const SystemConfig& cfg, double beta) {
        WorstCaseResult r = worst_case_bruteforce(cfg, beta);
        py::dict d;
        d["load"] = r.load.to_double();
        d["load_num"] = r.load.num();
        d["load_den"] = r.load.den();
        d["alpha"] = r.alpha;
        d["demand"] = r.demand.str();
        return d;
      },
      py::arg("cfg"), py::arg("beta"),
      "delivers every demand and returns the maximizing one");

  m.def(
      "verify_counting",
      [](const SystemConfig& cfg, double beta) {
        CountingReport r = verify_genie_counting(place(cfg, beta));
        py::dict d;
        d["pass"] = r.pass;
        d["common_pairs"] = r.common_pairs;
        d["unique_pairs"] = r.unique_pairs;
        d["common_avg"] = r.common_avg.to_double();
        d["unique_avg"] = r.unique_avg.to_double();
        d["appearance_checks"] = r.appearance_checks;
        d["first_mismatch"] = r.first_mismatch;
        return d;
      },
      py::arg("cfg"), py::arg("beta"),
      "brute-force cross-check of the averaging argument on one placement");
}
