// momrec: command-line front end for the moment reconstruction library.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "momrec/elliptic.hpp"
#include "momrec/invisible.hpp"
#include "momrec/io.hpp"
#include "momrec/recon1d.hpp"
#include "momrec/recon2d.hpp"

using namespace momrec;
using io::Json;

namespace {

constexpr const char* kManifestSchema = "momrec.manifest/1";

struct Options {
  std::string input, domain, moments, output, svg, truth, mode, forward;
  std::size_t alpha_max = 0, beta_max = 0, kappa = 1, degree = 0, jumps = 0, piece_degree = 0;
  std::optional<std::size_t> samples, beta_override;
  std::vector<double> support;
  double tol = 1e-10, quad_tol = 1e-12;
  std::optional<double> rank_tol;
  bool search_degree = false, full_budget = false;
};

bool exact_env() {
  const char* v = std::getenv("MOMREC_EXACT");
  return v && std::string(v) == "1";
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Run {
  std::string subcommand;
  Json inputs = Json::array();
  Json parameters = Json::object();
  Json outputs = Json::array();
  bool exact = false;
};

void emit(const Options& o, Run& run, const Json& result) {
  Json manifest;
  manifest["schema"] = kManifestSchema;
  manifest["subcommand"] = run.subcommand;
  manifest["inputs"] = run.inputs;
  manifest["parameters"] = run.parameters;
  manifest["exact"] = run.exact;
  if (!o.output.empty()) run.outputs.push_back(o.output);
  manifest["outputs"] = run.outputs;
  if (o.output.empty()) {
    std::cout << io::dump({{"manifest", manifest}, {"result", result}});
    return;
  }
  io::write_text(o.output, io::dump(result));
  io::write_text(o.output + ".manifest.json", io::dump(manifest));
}

void cmd_moments1d(const Options& o, Run& run) {
  const Json in = io::read_file(o.input);
  run.inputs.push_back(o.input);
  run.parameters["alpha_max"] = o.alpha_max;
  run.exact = exact_env();
  if (run.exact) {
    const auto g = io::piecewise_from_json<Rational>(in);
    emit(o, run, io::moments1d_to_json(moments_pp(g, o.alpha_max + 1)));
  } else {
    const auto g = io::piecewise_from_json<double>(in);
    emit(o, run, io::moments1d_to_json(moments_pp(g, o.alpha_max + 1)));
  }
}

void cmd_moments2d(const Options& o, Run& run) {
  const Json in = io::read_file(o.domain);
  run.inputs.push_back(o.domain);
  run.parameters["alpha_max"] = o.alpha_max;
  run.parameters["beta_max"] = o.beta_max;
  run.exact = exact_env();
  if (run.exact)
    emit(o, run, io::moments2d_to_json(moments2d(io::domain_from_json<Rational>(in), o.alpha_max, o.beta_max)));
  else
    emit(o, run, io::moments2d_to_json(moments2d(io::domain_from_json<double>(in), o.alpha_max, o.beta_max)));
}

void cmd_recon1d(const Options& o, Run& run) {
  run.inputs.push_back(o.moments);
  Recon1DConfig cfg;
  cfg.max_jumps = o.jumps;
  cfg.max_degree = o.piece_degree;
  cfg.tol = o.tol;
  cfg.rank_tol = o.rank_tol;
  cfg.search_degree = o.search_degree;
  if (!o.support.empty()) {
    if (o.support.size() != 2) fail(ErrorCode::InvalidInput, "--support takes two values");
    cfg.support_hint = RealInterval(o.support[0], o.support[1]);
  }
  run.parameters = {{"K", o.jumps}, {"N", o.piece_degree}, {"tol", o.tol}, {"search_degree", o.search_degree}};
  if (!o.support.empty()) run.parameters["support"] = o.support;

  Json result;
  if (ends_with(o.moments, ".csv")) {
    result = io::piecewise_to_json(reconstruct1d(io::moments1d_from_csv(io::read_text(o.moments)), cfg));
  } else {
    const Json in = io::read_file(o.moments);
    run.exact = io::has_exact_scalars(in);
    if (run.exact)
      result = io::piecewise_to_json(reconstruct1d(io::moments1d_from_json<Real>(in), cfg).cast<double>());
    else
      result = io::piecewise_to_json(reconstruct1d(io::moments1d_from_json<double>(in), cfg));
  }
  emit(o, run, result);
}

void cmd_recon2d(const Options& o, Run& run) {
  const Json in = io::read_file(o.moments);
  run.inputs.push_back(o.moments);
  Recon2DConfig cfg;
  cfg.kappa = o.kappa;
  cfg.degree = o.degree;
  cfg.samples_per_interval = o.samples;
  cfg.tol = o.tol;
  cfg.rank_tol = o.rank_tol;
  cfg.beta_max = o.beta_override;
  cfg.search_degree = !o.full_budget;
  run.parameters = {{"kappa", o.kappa}, {"d", o.degree}, {"tol", o.tol}, {"samples", cfg.samples()},
                    {"search_degree", cfg.search_degree}};
  run.exact = io::has_exact_scalars(in);
  const DomainSpec g = run.exact ? reconstruct2d(io::moments2d_from_json<Real>(in), cfg).cast<double>()
                                 : reconstruct2d(io::moments2d_from_json<double>(in), cfg);
  if (!o.svg.empty()) {
    std::optional<DomainSpec> truth;
    if (!o.truth.empty()) {
      truth = io::domain_from_json<double>(io::read_file(o.truth));
      run.inputs.push_back(o.truth);
    }
    io::write_text(o.svg, render_svg(g, truth ? &*truth : nullptr));
    run.outputs.push_back(o.svg);
  }
  emit(o, run, io::domain_to_json(g));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(to_double(parse_rational(cur)));
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return out;
}

void cmd_elliptic(const Options& o, Run& run) {
  run.parameters = {{"tol", o.tol}, {"quad_tol", o.quad_tol}};
  if (!o.forward.empty()) {
    const auto c = parse_list(o.forward);
    if (c.size() != 4) fail(ErrorCode::InvalidInput, "--forward takes a,b,c,d");
    run.parameters["coefficients"] = c;
    emit(o, run, io::elliptic_to_json(elliptic_moments(c[0], c[1], c[2], c[3], o.quad_tol)));
    return;
  }
  if (o.moments.empty()) fail(ErrorCode::InvalidInput, "elliptic needs --moments or --forward");
  run.inputs.push_back(o.moments);
  const std::string text = io::read_text(o.moments);
  const auto first = text.find_first_not_of(" \t\r\n");
  const EllipticMoments e = (first != std::string::npos && text[first] == '{')
                                ? io::elliptic_from_json(io::parse(text))
                                : io::elliptic_from_csv(text);
  const auto fit = reconstruct_elliptic_fit(e, o.tol);
  const auto& g = fit.curve;
  emit(o, run, {{"a", g.a}, {"b", g.b}, {"c", g.c}, {"d", g.d}, {"x1", g.x1}, {"x2", g.x2},
                {"determinant", fit.determinant}, {"condition", fit.condition}});
}

Json poly_json(const Polynomial& p) { return io::polynomial_to_json(p); }

RealInterval interval_from(const Json& j) {
  const auto& iv = j.at("interval");
  if (!iv.is_array() || iv.size() != 2) fail(ErrorCode::InvalidInput, "interval must be [lo, hi]");
  return RealInterval(io::scalar_from_json<double>(iv[0]), io::scalar_from_json<double>(iv[1]));
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

void cmd_invisible(const Options& o, Run& run) {
  const Json in = io::read_file(o.input);
  run.inputs.push_back(o.input);
  run.parameters = {{"mode", o.mode}, {"tol", o.tol}, {"quad_tol", o.quad_tol}};
  Json r;
  if (o.mode == "legendre") {
    const auto n = need(in, "n").get<std::size_t>();
    const auto count = need(in, "count").get<std::size_t>();
    run.exact = exact_env();
    if (run.exact) {
      r = io::moments1d_to_json(legendre_moments<Rational>(n, count));
    } else {
      r = io::moments1d_to_json(legendre_moments<double>(n, count));
    }
  } else if (o.mode == "wave") {
    Rectangle rect;
    if (in.contains("rectangle")) {
      const auto& q = in.at("rectangle");
      rect = {need(q, "x_min").get<double>(), need(q, "x_max").get<double>(), need(q, "y_min").get<double>(),
              need(q, "y_max").get<double>()};
    }
    const auto v = wave_invisibility(io::bivariate_from_json(need(in, "f")), rect, o.tol);
    r = {{"verdict", v.invisible ? "invisible" : "visible"}, {"F", poly_json(v.F)}, {"H", poly_json(v.H)}};
    if (!v.invisible)
      r["witness"] = {{"axis", std::string(1, v.witness_axis)},
                      {"degree", v.witness_degree},
                      {"first_nonzero_moment", v.witness_moment}};
  } else if (o.mode == "power-scan") {
    const auto P = io::polynomial_from_json<Rational>(need(in, "P"));
    const auto q = io::polynomial_from_json<Rational>(need(in, "q"));
    const auto& iv = need(in, "interval");
    const auto k = need(in, "k_max").get<std::size_t>();
    const auto lo = io::scalar_from_json<Rational>(iv.at(0)), hi = io::scalar_from_json<Rational>(iv.at(1));
    if (hi < lo) fail(ErrorCode::InvalidInput, "interval requires lo <= hi");
    const auto m = power_moment_scan(P, q, lo, hi, k);
    r["moments"] = Json::array();
    for (const auto& v : m) r["moments"].push_back(exact_env() ? io::scalar_to_json(v) : Json(to_double(v)));
    run.exact = exact_env();
  } else if (o.mode == "cc") {
    const auto v = verify_cc(io::polynomial_from_json<double>(need(in, "P")),
                             io::polynomial_from_json<double>(need(in, "q")),
                             io::polynomial_from_json<double>(need(in, "W")), interval_from(in), o.tol);
    r = {{"verdict", v.holds ? "holds" : "fails"},
         {"endpoints_match", v.endpoints_match},
         {"p_decomposes", v.p_decomposes},
         {"q_decomposes", v.q_decomposes},
         {"p_residual", v.p_residual},
         {"q_residual", v.q_residual},
         {"moments", v.scan}};
    if (v.p_outer) r["P_outer"] = poly_json(*v.p_outer);
    if (v.q_outer) r["Q_outer"] = poly_json(*v.q_outer);
  } else if (o.mode == "mcc") {
    const std::size_t level = in.value("level", std::size_t{256});
    const auto v = verify_mcc_example(io::bivariate_from_json(need(in, "P")), need(in, "axis").get<int>(),
                                      io::polynomial_from_json<double>(need(in, "Q")), o.quad_tol, level);
    r = {{"integral", v.integral}, {"residual", v.residual}, {"bound", v.bound},
         {"radius", v.radius},     {"passed", v.passed},     {"level", level}};
  } else if (o.mode == "laurent") {
    const auto dim = need(in, "dim").get<std::size_t>();
    LaurentPolynomial f(dim);
    for (const auto& t : need(in, "terms")) f.add(need(t, "exponent").get<std::vector<int>>(),
                                                  io::scalar_from_json<double>(need(t, "coeff")));
    const auto v = laurent_invisibility(f, in.value("k_max", std::size_t{8}));
    r = {{"verdict", v.predicted_invisible ? "predicted_invisible" : "predicted_visible"},
         {"constant_terms", v.constant_terms},
         {"consistent", v.consistent}};
  } else {
    fail(ErrorCode::InvalidInput, "unknown mode '" + o.mode + "'");
  }
  emit(o, run, r);
}

void report(const std::string& name, const std::string& message) {
  std::cerr << Json{{"error", name}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruction of piecewise polynomials and planar domains from moments"};
  app.name("momrec");
  app.require_subcommand(1);
  Options o;

  auto tol = [&](CLI::App* s) { s->add_option("--tol", o.tol, "Tolerance")->capture_default_str(); };
  auto out = [&](CLI::App* s) { s->add_option("-o,--output", o.output, "Output file (default: stdout)"); };

  auto* m1 = app.add_subcommand("moments1d", "Power moments of a piecewise polynomial");
  m1->add_option("--input", o.input, "Piecewise polynomial JSON")->required();
  m1->add_option("--alpha-max", o.alpha_max, "Highest moment index")->required();
  out(m1);

  auto* m2 = app.add_subcommand("moments2d", "Double moments of a domain");
  m2->add_option("--domain", o.domain, "DomainSpec JSON")->required();
  m2->add_option("--alpha-max", o.alpha_max)->required();
  m2->add_option("--beta-max", o.beta_max)->required();
  out(m2);

  auto* r1 = app.add_subcommand("recon1d", "Piecewise polynomial from 1D moments");
  r1->add_option("--moments", o.moments, "Moment table (JSON or one value per line .csv)")->required();
  r1->add_option("--jumps", o.jumps, "Bound K on interior breakpoints")->required();
  r1->add_option("--piece-degree", o.piece_degree, "Bound N on piece degree")->required();
  r1->add_option("--support", o.support, "Expected support lo hi")->expected(2);
  r1->add_option("--rank-tol", o.rank_tol);
  r1->add_flag("--search-degree", o.search_degree, "Settle on the lowest piece degree that fits");
  tol(r1);
  out(r1);

  auto* r2 = app.add_subcommand("recon2d", "Domain from double moments");
  r2->add_option("--moments", o.moments, "MomentTable2D JSON")->required();
  r2->add_option("--kappa", o.kappa, "Bound on boundary segments")->required();
  r2->add_option("--degree", o.degree, "Bound on boundary degree")->required();
  r2->add_option("--samples", o.samples, "Sample points per interval (default 2d+3)");
  r2->add_option("--beta-max", o.beta_override, "Use rows beyond 2(kappa-1)");
  r2->add_option("--rank-tol", o.rank_tol);
  r2->add_flag("--full-budget", o.full_budget, "Require the full moment budget for every degree bound");
  r2->add_option("--svg", o.svg, "Write an SVG rendering");
  r2->add_option("--truth", o.truth, "DomainSpec drawn under the reconstruction in the SVG");
  tol(r2);
  out(r2);

  auto* el = app.add_subcommand("elliptic", "Cubic y^2 = f(x) from seven moments");
  el->add_option("--moments", o.moments, "Seven moments (CSV or JSON)");
  el->add_option("--forward", o.forward, "Compute the moments of a,b,c,d instead");
  el->add_option("--quad-tol", o.quad_tol)->capture_default_str();
  tol(el);
  out(el);

  auto* iv = app.add_subcommand("invisible", "Moment-vanishing analyzers");
  iv->add_option("--mode", o.mode, "legendre | wave | power-scan | cc | mcc | laurent")
      ->required()
      ->check(CLI::IsMember({"legendre", "wave", "power-scan", "cc", "mcc", "laurent"}));
  iv->add_option("--input", o.input, "Mode-specific JSON input")->required();
  iv->add_option("--quad-tol", o.quad_tol)->capture_default_str();
  tol(iv);
  out(iv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("InvalidInput", e.what());
    return 2;
  }

  Run run;
  try {
    const std::pair<CLI::App*, void (*)(const Options&, Run&)> commands[] = {
        {m1, cmd_moments1d}, {m2, cmd_moments2d}, {r1, cmd_recon1d},
        {r2, cmd_recon2d},   {el, cmd_elliptic},  {iv, cmd_invisible}};
    for (const auto& [sub, cmd] : commands)
      if (sub->parsed()) {
        run.subcommand = sub->get_name();
        cmd(o, run);
      }
  } catch (const Error& e) {
    report(std::string(e.name()), e.detail());
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const Json::exception& e) {
    report("InvalidInput", e.what());
    return 2;
  } catch (const std::exception& e) {
    report("InvalidInput", e.what());
    return 2;
  }
  return 0;
}
