// Command-line front end for the cbinom library: evaluate generalized
// binomial coefficients, tabulate them over a real grid, evaluate integrals
// against the built-in kernels, and run the identity verifiers.
#include <cbinom/binomial.hpp>
#include <cbinom/identities.hpp>
#include <cbinom/quadrature.hpp>
#include <cbinom/special.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using cbinom::Cplx;
using json = nlohmann::ordered_json;

bool parse_double_strict(const std::string& s, double* out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    *out = std::stod(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

// Accepts "1", "i", "-i", "1+2i", "1.5-0.5i" and the like; rejects anything
// else, naming the offending token.
Cplx parse_complex(const std::string& token) {
  const auto fail = [&]() -> Cplx {
    throw CLI::ValidationError("bad complex number: '" + token + "'");
  };
  if (token.empty()) return fail();
  if (token.back() == 'i' || token.back() == 'I') {
    const std::string body = token.substr(0, token.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' &&
          body[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    double re = 0.0;
    double im = 0.0;
    if (split == std::string::npos) {
      if (body.empty() || body == "+") {
        im = 1.0;
      } else if (body == "-") {
        im = -1.0;
      } else if (!parse_double_strict(body, &im)) {
        return fail();
      }
      return {0.0, im};
    }
    const std::string re_part = body.substr(0, split);
    const std::string im_part = body.substr(split);
    if (!parse_double_strict(re_part, &re)) return fail();
    if (im_part == "+") {
      im = 1.0;
    } else if (im_part == "-") {
      im = -1.0;
    } else if (!parse_double_strict(im_part, &im)) {
      return fail();
    }
    return {re, im};
  }
  double re = 0.0;
  if (!parse_double_strict(token, &re)) return fail();
  return {re, 0.0};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json cplx_json(Cplx v) {
  json j;
  j["re"] = v.real();
  j["im"] = v.imag();
  return j;
}

json eval_json(const cbinom::Evaluation& ev) {
  json j;
  j["value"] = cplx_json(ev.value);
  j["abs_error_estimate"] = ev.abs_error_estimate;
  j["terms_used"] = ev.terms_used;
  j["converged"] = ev.converged;
  return j;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw cbinom::DomainError("cannot open output path " + out_path);
    f << payload << "\n";
  }
}

struct Globals {
  double tol = 0.0;  // 0: keep library defaults
  std::size_t max_terms = 0;
  std::string format;  // "", "csv", "json"
  std::string out_path;
  std::uint64_t seed = 7;

  cbinom::EvalOptions options() const {
    cbinom::EvalOptions o;
    if (tol > 0.0) {
      o.abs_tol = tol;
      o.rel_tol = tol;
    }
    if (max_terms > 0) o.max_terms = max_terms;
    return o;
  }
};

cbinom::Method parse_method(const std::string& name) {
  if (name.empty() || name == "auto") return cbinom::Method::Auto;
  if (name == "gamma" || name == "gamma-ratio") return cbinom::Method::GammaRatio;
  if (name == "finite-sum") return cbinom::Method::FiniteSincSum;
  if (name == "sinc-series") return cbinom::Method::InfiniteSincSeries;
  throw CLI::ValidationError("unknown method: '" + name + "'");
}

int cmd_eval(const Globals& g, const std::string& w_s, const std::string& z_s,
             const std::string& method_s) {
  cbinom::EvalOptions opts = g.options();
  opts.method = parse_method(method_s);
  const cbinom::BinomialArgs args{parse_complex(w_s), parse_complex(z_s)};
  const cbinom::Evaluation ev = cbinom::binom_eval(args, opts);
  json j = eval_json(ev);
  j["method"] = method_s.empty() ? "auto" : method_s;
  if (g.format == "csv") {
    std::string csv = "re,im,abs_error_estimate,terms_used,converged\n";
    csv += fmt17(ev.value.real()) + "," + fmt17(ev.value.imag()) + "," +
           fmt17(ev.abs_error_estimate) + "," + std::to_string(ev.terms_used) +
           "," + (ev.converged ? "1" : "0");
    emit(csv, g.out_path);
  } else {
    emit(j.dump(2), g.out_path);
  }
  return ev.converged ? 0 : 2;
}

int cmd_table(const Globals& g, const std::string& w_s, double x_min,
              double x_max, double step) {
  if (!(x_min < x_max) || !(step > 0.0)) {
    std::cerr << "table: requires x_min < x_max and step > 0\n";
    return 1;
  }
  const Cplx w = parse_complex(w_s);
  const cbinom::EvalOptions opts = g.options();
  std::string csv = "x,re,im,abs_err\n";
  json rows = json::array();
  for (long i = 0;; ++i) {
    const double x = x_min + double(i) * step;
    if (x > x_max + 0.5 * step) break;
    const cbinom::Evaluation ev =
        cbinom::binom_eval({w, Cplx(x, 0.0)}, opts);
    if (g.format == "json") {
      json row;
      row["x"] = x;
      row["re"] = ev.value.real();
      row["im"] = ev.value.imag();
      row["abs_err"] = ev.abs_error_estimate;
      rows.push_back(row);
    } else {
      csv += fmt17(x) + "," + fmt17(ev.value.real()) + "," +
             fmt17(ev.value.imag()) + "," + fmt17(ev.abs_error_estimate) + "\n";
    }
  }
  if (g.format == "json") {
    emit(rows.dump(2), g.out_path);
  } else {
    csv.pop_back();  // trailing newline; emit() adds one
    emit(csv, g.out_path);
  }
  return 0;
}

cbinom::Kernel make_kernel(const std::string& name, const std::string& alpha_s,
                           const std::string& a_s, const std::string& csv_path) {
  if (name == "rational-simple")
    return cbinom::Kernel::rational_simple(parse_complex(alpha_s));
  if (name == "rational-square")
    return cbinom::Kernel::rational_square(parse_complex(alpha_s));
  if (name == "sech") return cbinom::Kernel::sech(parse_complex(alpha_s));
  if (name == "sinc-shift")
    return cbinom::Kernel::sinc_shift(parse_complex(a_s));
  if (name == "tabulated") return cbinom::Kernel::tabulated_from_csv(csv_path);
  throw CLI::ValidationError("unknown kernel: '" + name + "'");
}

int cmd_integrate(const Globals& g, const std::string& w_s,
                  const std::string& kernel_s, const std::string& alpha_s,
                  const std::string& a_s, const std::string& csv_path) {
  const Cplx w = parse_complex(w_s);
  const cbinom::Kernel kernel = make_kernel(kernel_s, alpha_s, a_s, csv_path);
  const cbinom::EvalOptions opts = g.options();
  cbinom::QuadratureSpec spec;
  spec.panel_tol = 1e-9;

  json out;
  bool all_converged = true;
  std::optional<cbinom::Evaluation> series;
  if (kernel.has_fhat() && w.real() > -1.0) {
    series = cbinom::theorem3_evaluate(w, kernel, opts, spec);
    out["series"] = eval_json(*series);
    all_converged = all_converged && series->converged;
  } else {
    out["series"] = nullptr;
  }
  std::optional<cbinom::Evaluation> quad;
  if (kernel.has_value()) {
    cbinom::QuadratureSpec qspec = spec;
    if (kernel.exponential_decay()) {
      qspec.truncation_radius = kernel.suggested_radius();
    } else {
      qspec.oscillation_period = 1.0;
      qspec.truncation_radius = std::abs(kernel.param()) + 6.0;
    }
    const auto f = [&](double x) {
      double xx = x;
      // keep removable singularities of rational kernels off exact nodes
      if (kernel.id() == cbinom::Kernel::Id::RationalSimple &&
          std::abs(Cplx(xx, 0.0) + kernel.param()) < 1e-9) {
        xx += 1e-7;
      }
      return cbinom::binom_gamma(w, Cplx(xx, 0.0)) * kernel.value(xx);
    };
    quad = cbinom::integrate_line(f, qspec);
    out["quadrature"] = eval_json(*quad);
    all_converged = all_converged && quad->converged;
  } else {
    out["quadrature"] = nullptr;
  }
  if (series.has_value() && quad.has_value()) {
    out["mutual_residual"] = std::abs(series->value - quad->value);
  } else {
    out["mutual_residual"] = nullptr;
  }
  emit(out.dump(2), g.out_path);
  return all_converged ? 0 : 2;
}

int cmd_verify(const Globals& g, const std::string& identity_s,
               const std::string& w_s, const std::string& z_s,
               const std::string& alpha_s) {
  const cbinom::EvalOptions opts = g.options();
  cbinom::QuadratureSpec spec;
  spec.panel_tol = 1e-9;
  cbinom::IdentityReport report;
  if (identity_s == "antiderivative") {
    const Cplx z = parse_complex(z_s);
    if (z.imag() != 0.0) {
      throw CLI::ValidationError("antiderivative check needs real z");
    }
    report = cbinom::verify_antiderivative(parse_complex(w_s), z.real(), opts);
  } else if (identity_s == "cot") {
    report =
        cbinom::verify_cot_identity(parse_complex(w_s), parse_complex(z_s), opts);
  } else if (identity_s == "triple-product") {
    report = cbinom::verify_triple_product(parse_complex(w_s),
                                           parse_complex(z_s), opts);
  } else if (identity_s == "rational-simple") {
    report = cbinom::verify_rational_simple(parse_complex(w_s),
                                            parse_complex(alpha_s), opts, spec);
  } else if (identity_s == "rational-square") {
    report = cbinom::verify_rational_square(parse_complex(w_s),
                                            parse_complex(alpha_s), opts, spec);
  } else if (identity_s == "sech") {
    report = cbinom::verify_sech_integral(parse_complex(alpha_s), opts, spec);
  } else if (identity_s == "sinc-representation") {
    report = cbinom::verify_sinc_representation(parse_complex(w_s),
                                                parse_complex(z_s), opts, spec);
  } else {
    throw CLI::ValidationError("unknown identity: '" + identity_s + "'");
  }
  emit(cbinom::report_to_json(report), g.out_path);
  return report.pass ? 0 : 3;
}

int cmd_battery(const Globals& g, std::size_t samples) {
  const cbinom::EvalOptions opts = g.options();
  cbinom::QuadratureSpec spec;
  spec.panel_tol = 1e-9;
  const auto reports =
      cbinom::run_identity_battery(samples, g.seed, opts, spec);
  std::size_t failures = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++failures;
  }
  emit(cbinom::reports_to_json(reports), g.out_path);
  std::cerr << "battery: " << reports.size() << " checks, " << failures
            << " failures\n";
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized binomial coefficients on complex arguments"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--tol", g.tol, "absolute/relative tolerance");
  app.add_option("--max-terms", g.max_terms, "series term budget");
  app.add_option("--format", g.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "write output to this path");
  app.add_option("--seed", g.seed, "random seed for battery");

  std::string w_s, z_s = "0", method_s, kernel_s, alpha_s, a_s = "0",
                  csv_path, identity_s;
  double x_min = -2.0, x_max = 8.0, step = 0.05;
  std::size_t samples = 50;

  auto* eval = app.add_subcommand("eval", "evaluate binom(w, z)");
  eval->fallthrough();
  eval->add_option("--w", w_s, "upper argument")->required();
  eval->add_option("--z", z_s, "lower argument")->required();
  eval->add_option("--method", method_s,
                   "auto|gamma|finite-sum|sinc-series");

  auto* table = app.add_subcommand("table", "tabulate binom(w, x) on a grid");
  table->fallthrough();
  table->add_option("--w", w_s)->default_val("1+1i");
  table->add_option("--x-min", x_min);
  table->add_option("--x-max", x_max);
  table->add_option("--step", step);

  auto* integrate =
      app.add_subcommand("integrate", "integrate binom(w, x) * kernel(x)");
  integrate->fallthrough();
  integrate->add_option("--w", w_s)->required();
  integrate->add_option("--kernel", kernel_s,
                        "sinc-shift|rational-simple|rational-square|sech|tabulated")
      ->required();
  integrate->add_option("--alpha", alpha_s);
  integrate->add_option("--a", a_s);
  integrate->add_option("--csv", csv_path);

  auto* verify = app.add_subcommand("verify", "verify one identity");
  verify->fallthrough();
  verify->add_option("--identity", identity_s)->required();
  verify->add_option("--w", w_s);
  verify->add_option("--z", z_s);
  verify->add_option("--alpha", alpha_s);

  auto* battery = app.add_subcommand("battery", "seeded identity sweep");
  battery->fallthrough();
  battery->add_option("--samples", samples);

  try {
    app.parse(argc, argv);
    if (eval->parsed()) return cmd_eval(g, w_s, z_s, method_s);
    if (table->parsed()) return cmd_table(g, w_s, x_min, x_max, step);
    if (integrate->parsed())
      return cmd_integrate(g, w_s, kernel_s, alpha_s, a_s, csv_path);
    if (verify->parsed()) return cmd_verify(g, identity_s, w_s, z_s, alpha_s);
    if (battery->parsed()) return cmd_battery(g, samples);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const cbinom::NoConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
