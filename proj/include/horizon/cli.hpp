#ifndef HORIZON_CLI_HPP
#define HORIZON_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "horizon/chain_model.hpp"
#include "horizon/criteria.hpp"
#include "horizon/landmarks.hpp"
#include "horizon/oracle.hpp"
#include "horizon/tolerance.hpp"
#include "horizon/tracer.hpp"

namespace horizon::cli {

inline constexpr const char* kVersion = "0.1.0";

namespace detail {

using nlohmann::json;

inline std::vector<double> parse_vec(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void env_override(const char* name, double& target) {
  if (const char* v = std::getenv(name)) target = std::stod(v);
}

inline ToleranceConfig tol_from_env() {
  ToleranceConfig t;
  env_override("HORIZON_REAL_TOL", t.real_tol);
  env_override("HORIZON_BOUNDARY_TOL", t.boundary_tol);
  env_override("HORIZON_CLUSTER_TOL", t.cluster_tol);
  env_override("HORIZON_BAND_TOL", t.band_tol);
  env_override("HORIZON_EPS_B", t.eps_b);
  return t;
}

inline json tol_json(const ToleranceConfig& t) {
  return {{"real_tol", t.real_tol},
          {"boundary_tol", t.boundary_tol},
          {"cluster_tol", t.cluster_tol},
          {"band_tol", t.band_tol},
          {"eps_b", t.eps_b}};
}

inline json complex_array(const std::vector<cplx>& v) {
  json re = json::array(), im = json::array();
  for (const auto& z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"re", re}, {"im", im}};
}

inline json verdict_json(const Verdict& v) {
  return {{"region", to_string(v.region)},
          {"margin", v.margin},
          {"violated", v.violated},
          {"degenerate_scaling", v.degenerate_scaling}};
}

inline int region_exit(Region r) {
  switch (r) {
    case Region::Inside: return 0;
    case Region::Outside: return 1;
    default: return 2;
  }
}

}  // namespace detail

// Dispatch a full command line; JSON on out, machine-readable errors on
// err. Exit codes: member uses 0 Inside / 1 Outside / 2 Boundary; other
// commands 0 on success; all errors > 2.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  using detail::json;
  CLI::App app{"Quasi-Hermiticity domains of self-dual tridiagonal chains"};
  app.require_subcommand(1);

  ToleranceConfig tol = detail::tol_from_env();
  app.add_option("--real-tol", tol.real_tol);
  app.add_option("--boundary-tol", tol.boundary_tol);
  app.add_option("--cluster-tol", tol.cluster_tol);
  app.add_option("--band-tol", tol.band_tol);
  app.add_option("--eps-b", tol.eps_b);

  int dim = 2;
  std::string g_str, method_str = "criteria", axes_str, fix_str, range_str,
              res_str, out_file;
  double t_param = 0.0, c_param = 0.0;
  std::string caps_str;
  long samples = 100000;
  std::uint64_t seed = 1;

  auto* sc_spectrum = app.add_subcommand("spectrum", "numerical s-roots, energies, confluence");
  sc_spectrum->add_option("--dim", dim)->required();
  sc_spectrum->add_option("--g", g_str)->required();

  auto* sc_coeffs = app.add_subcommand("coeffs", "secular coefficients and abbreviations");
  sc_coeffs->add_option("--dim", dim)->required();
  sc_coeffs->add_option("--g", g_str)->required();

  auto* sc_member = app.add_subcommand("member", "Inside/Boundary/Outside classification");
  sc_member->add_option("--dim", dim)->required();
  sc_member->add_option("--g", g_str)->required();
  sc_member->add_option("--method", method_str)->check(CLI::IsMember({"criteria", "oracle", "both"}));

  auto* sc_spikes = app.add_subcommand("spikes", "spike couplings as CSV");
  sc_spikes->add_option("--dim", dim)->required();
  sc_spikes->add_option("--out", out_file);

  auto* sc_ansatz = app.add_subcommand("ansatz", "near-spike parametrized point");
  sc_ansatz->add_option("--dim", dim)->required();
  sc_ansatz->add_option("--t", t_param)->required();
  sc_ansatz->add_option("--G", caps_str)->required();

  auto* sc_dep = app.add_subcommand("dep", "N=6 double-exceptional-point solve");
  sc_dep->add_option("--c", c_param)->required();

  auto* sc_trace = app.add_subcommand("trace", "horizon slice to CSV");
  sc_trace->add_option("--dim", dim)->required();
  sc_trace->add_option("--axes", axes_str)->required();
  sc_trace->add_option("--fix", fix_str);
  sc_trace->add_option("--range", range_str)->required();
  sc_trace->add_option("--res", res_str)->required();
  sc_trace->add_option("--out", out_file)->required();
  sc_trace->add_option("--method", method_str)->check(CLI::IsMember({"criteria", "oracle"}));

  auto* sc_verify = app.add_subcommand("verify", "criteria vs oracle agreement report");
  sc_verify->add_option("--dim", dim)->required();
  sc_verify->add_option("--samples", samples);
  sc_verify->add_option("--seed", seed);

  // tolerance flags live on the root app but may appear after the subcommand
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << json{{"error", "parse"}, {"detail", e.what()}}.dump() << "\n";
    return 3;
  }

  try {
    tol.validate();
    json meta = {{"version", kVersion}, {"tolerances", detail::tol_json(tol)}};

    if (sc_spectrum->parsed() || sc_coeffs->parsed() || sc_member->parsed()) {
      ChainSpec spec{dim, detail::parse_vec(g_str)};
      meta["dim"] = dim;
      meta["g"] = spec.couplings;

      if (sc_spectrum->parsed()) {
        const auto rep = oracle::spectrum(spec, tol);
        json j = meta;
        j["s_roots"] = detail::complex_array(rep.s_roots);
        j["energies"] = detail::complex_array(rep.energies);
        j["confluence"] = rep.confluence;
        j["zero_cluster"] = rep.zero_cluster;
        j["verdict"] = detail::verdict_json(oracle::classify(rep, tol));
        out << j.dump(2) << "\n";
        return 0;
      }
      if (sc_coeffs->parsed()) {
        const SecularForm f = secular_form(spec);
        const auto a = criteria::aux_quantities(f, tol);
        json j = meta;
        j["coeffs"] = f.coeffs;
        j["raw_char"] = f.raw_char;
        j["B"] = a.b;
        if (a.q_def) j["q"] = a.q;
        if (a.c_def) j["C"] = a.c;
        if (a.d_def) j["D"] = a.d;
        if (a.g_def) j["G"] = a.g;
        out << j.dump(2) << "\n";
        return 0;
      }
      // member
      json j = meta;
      j["method"] = method_str;
      Region region = Region::Outside;
      if (method_str == "criteria" || method_str == "both") {
        const Verdict v = criteria::member(spec, tol);
        j["criteria"] = detail::verdict_json(v);
        region = v.region;
      }
      if (method_str == "oracle" || method_str == "both") {
        const Verdict v = oracle::classify(oracle::spectrum(spec, tol), tol);
        j["oracle"] = detail::verdict_json(v);
        region = v.region;
      }
      out << j.dump(2) << "\n";
      return detail::region_exit(region);
    }

    if (sc_spikes->parsed()) {
      const auto sp = landmarks::spikes(dim);
      std::ostringstream csv;
      csv << "# version=" << kVersion << " dim=" << dim << "\n";
      csv << "n,g_spike\n";
      for (std::size_t n = 0; n < sp.size(); ++n)
        csv << (n + 1) << "," << detail::fmt17(sp[n]) << "\n";
      if (out_file.empty()) {
        out << csv.str();
      } else {
        std::ofstream f(out_file);
        if (!f) throw std::runtime_error("cannot open output file " + out_file);
        f << csv.str();
      }
      return 0;
    }

    if (sc_ansatz->parsed()) {
      const auto ap = landmarks::ansatz_point(dim, t_param, detail::parse_vec(caps_str));
      ChainSpec spec{dim, ap.couplings};
      json j = meta;
      j["dim"] = dim;
      j["t"] = t_param;
      j["G"] = ap.g_caps;
      j["gammas"] = ap.gammas;
      j["couplings"] = ap.couplings;
      j["verdict"] = detail::verdict_json(
          oracle::classify(oracle::spectrum(spec, tol), tol));
      out << j.dump(2) << "\n";
      return 0;
    }

    if (sc_dep->parsed()) {
      const auto sols = landmarks::dep_solve(c_param, tol);
      json j = meta;
      j["c"] = c_param;
      json arr = json::array();
      for (const auto& s : sols)
        arr.push_back({{"a", s.a},
                       {"b_sq", s.b_sq},
                       {"z_sq", s.z_sq},
                       {"residual1", s.residual1},
                       {"residual2", s.residual2},
                       {"unequal_slack", s.unequal_slack}});
      j["solutions"] = arr;
      out << j.dump(2) << "\n";
      return 0;
    }

    if (sc_trace->parsed()) {
      tracer::SliceSpec slice;
      slice.dim = dim;
      for (double a : detail::parse_vec(axes_str))
        slice.free_axes.push_back(static_cast<int>(a));
      slice.fixed = fix_str.empty() ? std::vector<double>(dim / 2, 0.0)
                                    : detail::parse_vec(fix_str);
      {
        std::stringstream ss(range_str);
        std::string part;
        while (std::getline(ss, part, ',')) {
          const auto colon = part.find(':');
          if (colon == std::string::npos)
            throw std::invalid_argument("trace: --range expects lo:hi[,lo:hi]");
          slice.range.emplace_back(std::stod(part.substr(0, colon)),
                                   std::stod(part.substr(colon + 1)));
        }
      }
      for (double r : detail::parse_vec(res_str))
        slice.resolution.push_back(static_cast<int>(r));

      const tracer::Method method = method_str == "oracle"
                                        ? tracer::Method::Oracle
                                        : tracer::Method::Criteria;
      const auto res = tracer::slice_trace(slice, method, tol);

      std::ofstream f(out_file);
      if (!f) throw std::runtime_error("cannot open output file " + out_file);
      f << "# version=" << kVersion << " dim=" << dim << " method="
        << tracer::to_string(method) << " axes=" << axes_str << " range="
        << range_str << " res=" << res_str << "\n";
      f << "# tolerances=" << detail::tol_json(tol).dump() << "\n";
      for (int k = 1; k <= dim / 2; ++k) f << "g" << k << (k < dim / 2 ? "," : ",margin\n");
      for (const auto& bp : res.boundary_points) {
        for (double g : bp.couplings) f << detail::fmt17(g) << ",";
        f << detail::fmt17(bp.margin) << "\n";
      }
      json j = meta;
      j["boundary_points"] = res.boundary_points.size();
      j["out"] = out_file;
      out << j.dump(2) << "\n";
      return 0;
    }

    if (sc_verify->parsed()) {
      const auto rep = tracer::sample_verify(dim, samples, seed, tol);
      json j = meta;
      j["dim"] = dim;
      j["samples"] = rep.samples;
      j["agreed"] = rep.agreed;
      j["seed"] = rep.seed;
      j["all_in_band"] = rep.all_in_band;
      json dis = json::array();
      for (const auto& d : rep.disagreements)
        dis.push_back({{"g", d.couplings},
                       {"criteria_region", to_string(d.criteria_region)},
                       {"oracle_region", to_string(d.oracle_region)},
                       {"criteria_margin", d.criteria_margin},
                       {"oracle_margin", d.oracle_margin}});
      j["disagreements"] = dis;
      out << j.dump(2) << "\n";
      return rep.all_in_band ? 0 : 4;
    }
  } catch (const std::exception& e) {
    err << json{{"error", "runtime"}, {"detail", e.what()}}.dump() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace horizon::cli

#endif
