#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "expt/analysis.hpp"
#include "expt/io.hpp"
#include "expt/moments.hpp"
#include "expt/resultant.hpp"
#include "expt/special.hpp"
#include "expt/transform.hpp"
#include "expt/verify.hpp"

using namespace expt;

namespace {

json complex_json(cplx z) { return to_json(z); }

// Inline JSON text when it starts like JSON, a file path otherwise.
json json_arg(const std::string& s) {
  const auto p = s.find_first_not_of(" \t");
  if (p != std::string::npos && (s[p] == '[' || s[p] == '{')) {
    try {
      return json::parse(s);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad JSON argument: ") + e.what());
    }
  }
  return load_json(s);
}

QuadOptions quad_opts(double tol, int resolution, int threads) {
  if (!(tol > 0.0)) throw ParseError("tolerance must be positive");
  if (resolution < 64) throw ParseError("resolution must be at least 64");
  QuadOptions q;
  q.abs_tol = q.rel_tol = tol;
  q.resolution = resolution;
  q.threads = threads;
  return q;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

struct Common {
  double tol = 1e-10;
  int resolution = 600;
  int threads = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--tol", c.tol, "Absolute and relative tolerance");
  app->add_option("--resolution", c.resolution, "Samples per vertical line for lemniscate slices");
  app->add_option("--threads", c.threads, "Worker threads (0: EXPTRANSFORM_THREADS or hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential transforms, moments and resultants of planar domains"};
  app.require_subcommand(1);
  Common common;

  // transform
  auto* tr = app.add_subcommand("transform", "Evaluate E(z, w)");
  std::string tr_action = "eval", tr_domain, tr_z, tr_w, tr_method = "closed", tr_map;
  int tr_shells = 0, tr_maxdeg = 60;
  bool tr_root = false;
  tr->add_option("action", tr_action, "Only 'eval'")->check(CLI::IsMember({"eval"}));
  tr->add_option("--domain", tr_domain, "Domain JSON file")->required();
  tr->add_option("--z", tr_z, "Complex literal a+bi")->required();
  tr->add_option("--w", tr_w, "Complex literal a+bi")->required();
  tr->add_option("--method", tr_method, "quadrature|moments|closed|pushforward")
      ->check(CLI::IsMember({"quadrature", "moments", "closed", "pushforward"}));
  tr->add_option("--shells", tr_shells, "Moment shells (0: adaptive)");
  tr->add_option("--maxdeg", tr_maxdeg, "Moment table degree");
  tr->add_option("--map", tr_map, "Rational map JSON for the pushforward method");
  tr->add_flag("--root", tr_root, "Return E itself instead of E^n for the pushforward method");
  add_common(tr, common);

  // moments
  auto* mo = app.add_subcommand("moments", "Moment table as CSV p,q,re,im");
  std::string mo_domain;
  int mo_maxdeg = 4;
  bool mo_closed = false;
  mo->add_option("--domain", mo_domain)->required();
  mo->add_option("--maxdeg", mo_maxdeg)->check(CLI::NonNegativeNumber);
  mo->add_flag("--closed-form", mo_closed, "Use closed forms where known");
  add_common(mo, common);

  // resultant
  auto* re = app.add_subcommand("resultant", "Polynomial or meromorphic resultant");
  std::string re_f, re_g, re_kind = "auto";
  re->add_option("f", re_f, "Polynomial array or {num, den} (inline JSON or file)")->required();
  re->add_option("g", re_g, "Polynomial array or {num, den} (inline JSON or file)")->required();
  re->add_option("--kind", re_kind, "auto|poly|meromorphic")->check(CLI::IsMember({"auto", "poly", "meromorphic"}));

  // boundary
  auto* bo = app.add_subcommand("boundary", "Boundary contour CSV and diagonal decay along a ray");
  std::string bo_domain, bo_out, bo_origin, bo_dir, bo_method = "closed";
  int bo_count = 256, bo_ray_samples = 10;
  bo->add_option("--domain", bo_domain)->required();
  bo->add_option("--count", bo_count, "Points per curve")->check(CLI::Range(8, 10000000));
  bo->add_option("--out", bo_out, "Contour CSV file (default stdout)");
  bo->add_option("--ray-origin", bo_origin, "Boundary point where the diagonal ray starts");
  bo->add_option("--ray-direction", bo_dir, "Outward direction (default: origin / |origin|)");
  bo->add_option("--ray-samples", bo_ray_samples)->check(CLI::Range(1, 1000));
  bo->add_option("--method", bo_method, "closed|quadrature")->check(CLI::IsMember({"closed", "quadrature"}));
  add_common(bo, common);

  // special
  auto* sp = app.add_subcommand("special", "Special functions");
  sp->require_subcommand(1);
  auto* f2 = sp->add_subcommand("f2", "Appell F2");
  F2Params fp;
  std::string f2x = "0", f2y = "0", f2_method = "auto";
  f2->add_option("--a", fp.a);
  f2->add_option("--b", fp.b);
  f2->add_option("--bp", fp.bp);
  f2->add_option("--c", fp.c);
  f2->add_option("--cp", fp.cp);
  f2->add_option("--x", f2x);
  f2->add_option("--y", f2y);
  f2->add_option("--method", f2_method, "auto|series|integral|transformed")
      ->check(CLI::IsMember({"auto", "series", "integral", "transformed"}));
  auto* hu = sp->add_subcommand("hubbell", "Hubbell rectangular source integral");
  double hs = 0.0, ht = 0.0;
  hu->add_option("--s", hs)->required();
  hu->add_option("--t", ht)->required();
  auto* be = sp->add_subcommand("bernoulli-e", "Exponential transform of |z^2 - 1| < 1");
  std::string be_z, be_w, be_method = "f2";
  be->add_option("--z", be_z)->required();
  be->add_option("--w", be_w)->required();
  be->add_option("--method", be_method, "f2|hubbell|series")->check(CLI::IsMember({"f2", "hubbell", "series"}));

  // probe
  auto* pr = app.add_subcommand("probe", "Rational fits of sampled exterior transforms");
  std::string pr_domain;
  int pr_dmax = 6, pr_samples = 900;
  double pr_factor = 1.5;
  pr->add_option("--domain", pr_domain)->required();
  pr->add_option("--dmax", pr_dmax)->check(CLI::PositiveNumber);
  pr->add_option("--samples", pr_samples)->check(CLI::PositiveNumber);
  pr->add_option("--radius-factor", pr_factor);
  add_common(pr, common);

  // verify
  auto* ve = app.add_subcommand("verify", "Run the acceptance checks");
  VerifyOptions vo;
  ve->add_option("--only", vo.only, "Check names");
  ve->add_option("--seed", vo.seed);
  ve->add_option("--threads", vo.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*tr) {
      const DomainSpec d = load_domain(tr_domain);
      const cplx z = parse_complex(tr_z), w = parse_complex(tr_w);
      TransformSample s{z, w, {}, Method::closed_form, 0.0};
      if (tr_method == "quadrature") {
        s = exp_transform_quadrature(d, z, w, quad_opts(common.tol, common.resolution, common.threads));
      } else if (tr_method == "moments") {
        const MomentTable t = moment_table(d, tr_maxdeg, quad_opts(common.tol, common.resolution, common.threads));
        s = exp_transform_moments(t, z, w, tr_shells, common.tol);
      } else if (tr_method == "closed") {
        s.value = exp_transform_closed(d, z, w);
      } else {
        if (tr_map.empty()) throw ParseError("--map is required for the pushforward method");
        const RationalFn f = rational_from_json(json_arg(tr_map));
        const HermitianRational E1 = exterior_rational(d);
        s.method = Method::pushforward;
        s.value = tr_root ? pushforward_root(E1, f, z, w) : pushforward_transform(E1, f, z, w);
      }
      print_json({{"value", complex_json(s.value)}, {"est_error", s.est_error}, {"method", method_name(s.method)}});
    } else if (*mo) {
      const DomainSpec d = load_domain(mo_domain);
      const MomentTable t = moment_table(d, mo_maxdeg, quad_opts(common.tol, common.resolution, common.threads), mo_closed);
      std::cout << "p,q,re,im\n";
      for (int p = 0; p <= mo_maxdeg; ++p)
        for (int q = 0; q <= mo_maxdeg; ++q)
          std::cout << p << "," << q << "," << format_double(t.M(p, q).real()) << "," << format_double(t.M(p, q).imag())
                    << "\n";
    } else if (*re) {
      const json jf = json_arg(re_f), jg = json_arg(re_g);
      const bool poly = re_kind == "poly" || (re_kind == "auto" && jf.is_array() && jg.is_array());
      cplx v;
      if (poly)
        v = sylvester_resultant(poly_from_json(jf), poly_from_json(jg));
      else
        v = meromorphic_resultant(rational_from_json(jf), rational_from_json(jg));
      std::cout << format_double(v.real()) << " " << format_double(v.imag()) << "\n";
    } else if (*bo) {
      const DomainSpec d = load_domain(bo_domain);
      const auto curves = boundary_sample(d, bo_count);
      if (bo_out.empty()) {
        write_contour_csv(std::cout, curves);
      } else {
        std::ofstream os(bo_out);
        if (!os) throw ParseError("cannot write " + bo_out);
        write_contour_csv(os, curves);
      }
      if (!bo_origin.empty()) {
        const cplx z0 = parse_complex(bo_origin);
        cplx u = bo_dir.empty() ? z0 / std::abs(z0) : parse_complex(bo_dir);
        u /= std::abs(u);
        const QuadOptions q = quad_opts(common.tol, common.resolution, common.threads);
        std::ostream& os = bo_out.empty() ? std::cout : std::cout;
        if (bo_out.empty()) os << "\n";
        os << "offset,E_re,E_im\n";
        for (int k = 0; k < bo_ray_samples; ++k) {
          const double t = std::pow(10.0, -3.0 + 3.0 * k / std::max(1, bo_ray_samples - 1));
          const cplx z = z0 + t * u;
          const cplx e = bo_method == "closed" ? exp_transform_closed(d, z, z) : exp_transform_quadrature(d, z, z, q).value;
          os << format_double(t) << "," << format_double(e.real()) << "," << format_double(e.imag()) << "\n";
        }
      }
    } else if (*sp) {
      if (*f2) {
        fp.x = parse_complex(f2x);
        fp.y = parse_complex(f2y);
        cplx v;
        if (f2_method == "series")
          v = appell_f2_series(fp);
        else if (f2_method == "integral")
          v = appell_f2_integral(fp);
        else if (f2_method == "transformed") {
          const F2Transformed t = f2_transform(fp);
          v = t.prefactor * appell_f2_integral(t.params);
        } else
          v = appell_f2(fp);
        print_json({{"function", "f2"}, {"method", f2_method}, {"value", complex_json(v)}});
      } else if (*hu) {
        if (hs < 0.0 || ht < 0.0) throw ParseError("s and t must be nonnegative");
        print_json({{"function", "hubbell"}, {"method", "nested-1d"}, {"value", hubbell_integral(hs, ht)}});
      } else if (*be) {
        const SEvenMethod m = be_method == "f2" ? SEvenMethod::f2 : be_method == "hubbell" ? SEvenMethod::hubbell
                                                                                              : SEvenMethod::series;
        const cplx v = bernoulli_exp_transform(parse_complex(be_z), parse_complex(be_w), m);
        print_json({{"function", "bernoulli-e"}, {"method", be_method}, {"value", complex_json(v)}});
      }
    } else if (*pr) {
      const DomainSpec d = load_domain(pr_domain);
      const auto samples =
          probe_samples(d, pr_samples, pr_factor, quad_opts(common.tol, common.resolution, common.threads));
      const auto reps = rationality_probe(samples, pr_dmax);
      json out = json::array();
      for (const FitReport& r : reps) out.push_back({{"d", r.d}, {"residual", r.residual}});
      print_json(out);
    } else if (*ve) {
      const auto results = run_verify(vo);
      bool ok = true;
      for (const CheckResult& r : results) {
        std::cout << format_result(r) << "\n";
        ok = ok && r.pass;
      }
      return ok ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RegionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
