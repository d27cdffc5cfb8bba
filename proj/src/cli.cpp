#include "bsz/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bsz/json_io.hpp"
#include "bsz/reconstruct.hpp"

namespace bsz {

namespace {

struct Globals {
  double tol = kConditionTolerance;
  std::uint64_t seed = 0;
  int grid = 0;
  int indent = 2;
  bool tol_given = false;
};

Json load(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

QuadratureConfig quadrature(const Globals& g) {
  QuadratureConfig cfg;
  if (g.grid > 0) {
    if (g.grid < 4 || (g.grid & (g.grid - 1)) != 0)
      throw Error(ErrorCode::InvalidInput, "--grid must be a power of two >= 4");
    cfg.initial_grid = g.grid;
    cfg.max_grid = std::max(cfg.max_grid, g.grid);
  }
  return cfg;
}

std::pair<int, int> parse_depth(const std::string& s) {
  int a = 0, b = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> a >> comma >> b) || comma != ',' || !is.eof())
    throw Error(ErrorCode::InvalidInput, "--depth expects A,B");
  return {a, b};
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bernstein-Szego measures on the bicircle", "bszego"};
  app.set_version_flag("--version", kVersion);
  Globals g;
  app.add_option("--tol", g.tol, "numerical tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed for sampled checks")->capture_default_str();
  app.add_option("--grid", g.grid, "initial quadrature grid per axis (power of two)");
  app.add_option("--json-indent", g.indent, "JSON indent, negative for one line")->capture_default_str();
  app.require_subcommand(1);

  std::string poly_path, moments_path, trig_path, autocorr_path, depth;
  int jmax = 0, kmax = 0, n = 0, m = 0;
  bool open_face = false;
  std::string variant = "L";

  auto* c_mom = app.add_subcommand("moments", "moments of 1/|p|^2");
  c_mom->add_option("--poly", poly_path, "polynomial JSON")->required();
  c_mom->add_option("--jmax", jmax)->required()->check(CLI::NonNegativeNumber);
  c_mom->add_option("--kmax", kmax)->required()->check(CLI::NonNegativeNumber);

  auto window = [&](CLI::App* sub, const char* flag, std::string& path, const char* help) {
    sub->add_option(flag, path, help)->required();
    sub->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
  };
  auto* c_check = app.add_subcommand("check", "matrix condition and admissible d interval");
  window(c_check, "--moments", moments_path, "moment JSON");
  auto* c_rec = app.add_subcommand("reconstruct", "recover p from moments");
  window(c_rec, "--moments", moments_path, "moment JSON");
  auto* c_fac = app.add_subcommand("factor", "factor a positive trigonometric polynomial as |p|^2");
  window(c_fac, "--trig", trig_path, "trigonometric polynomial JSON");
  auto* c_sos = app.add_subcommand("sos", "sums of squares certificate");
  c_sos->add_option("--poly", poly_path, "polynomial JSON")->required();
  c_sos->add_flag("--open-face", open_face, "allow zeros on T x D via the scaling limit");
  c_sos->add_option("--variant", variant, "certificate form")->check(CLI::IsMember({"L", "G"}));
  auto* c_gdv = app.add_subcommand("gdv", "geometry check and determinantal representation");
  c_gdv->add_option("--poly", poly_path, "polynomial JSON")->required();
  auto* c_full = app.add_subcommand("full", "truncated full-measure test");
  window(c_full, "--moments", moments_path, "moment JSON");
  c_full->add_option("--depth", depth, "A,B (default n+3,m+3)");
  auto* c_ar = app.add_subcommand("ar", "extended autoregressive filter");
  window(c_ar, "--autocorr", autocorr_path, "autocorrelation JSON (moment format)");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  g.tol_given = app.count("--tol") > 0;

  Json result;
  int code = 0;
  try {
    if (!(g.tol > 0)) throw Error(ErrorCode::InvalidInput, "--tol must be positive");
    QuadratureConfig qc = quadrature(g);
    if (*c_mom) {
      if (g.tol_given) qc.tolerance = g.tol;
      result = to_json(moments_from_density(poly_from_json(load(poly_path, in)), jmax, kmax, qc));
    } else if (*c_check) {
      MomentSpace space(moments_from_json(load(moments_path, in)), n, m);
      StratificationReport r = check_matrix_condition(build_operators(space, n, m), g.tol);
      result = to_json(r);
      code = r.holds ? 0 : 1;
    } else if (*c_rec) {
      result = to_json(reconstruct_p(moments_from_json(load(moments_path, in)), n, m, g.tol));
    } else if (*c_fac) {
      result = to_json(factor_trig(trig_from_json(load(trig_path, in)), n, m, qc, g.tol));
    } else if (*c_sos) {
      BiPoly p = poly_from_json(load(poly_path, in));
      CertVariant v = variant == "G" ? CertVariant::G : CertVariant::L;
      SosCertificate cert = open_face ? certificate_open_face(p, kDefaultSchedule, g.tol, v, qc, g.seed)
                                      : certificate_closed_face(p, v, qc, g.seed);
      if (!(cert.residual < g.tol))
        throw Error(ErrorCode::CertificateFailed, "certificate residual above tolerance", cert.residual);
      result = to_json(cert);
    } else if (*c_gdv) {
      BiPoly p = poly_from_json(load(poly_path, in));
      DetRepConfig dc;
      dc.seed = g.seed;
      if (g.tol_given) dc.tol = g.tol;
      if (g.grid > 0) dc.samples = g.grid;
      GeometryReport geo = check_gdv_geometry(p.trimmed(), std::max(dc.samples, 16), dc.geometry_tol);
      result["geometry"] = to_json(geo);
      if (!geo.passed) {
        Error e(ErrorCode::NotGdv, "zero set leaves the generalized distinguished region", geo.worst_deviation);
        result.update(to_json(e));
        code = exit_code(e.code());
      } else {
        DetRep d = build_detrep(p, dc);
        result["detrep"] = to_json(d);
        result["normalized"] = to_json(d.normalized);
      }
    } else if (*c_full) {
      auto [a, b] = depth.empty() ? std::pair{n + 3, m + 3} : parse_depth(depth);
      FullMeasureReport r = check_full_measure(moments_from_json(load(moments_path, in)), n, m, a, b, g.tol);
      result = to_json(r);
      code = r.verdict == Verdict::Pass ? 0 : (r.verdict == Verdict::Fail ? 1 : 3);
    } else if (*c_ar) {
      ArSolution s = solve_ar({n, m, moments_from_json(load(autocorr_path, in))}, g.tol);
      result = to_json(s);
      code = s.classification == ArClass::None ? 1 : 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    Json j = to_json(e);
    if (result.is_object()) {
      result.update(j);
      j = result;
    }
    out << dump(j, g.indent) << "\n";
    return exit_code(e.code());
  }
  out << dump(result, g.indent) << "\n";
  return code;
}

}  // namespace bsz
