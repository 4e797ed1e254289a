#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <qgraph.hpp>

namespace qgraph::cli {

void GridSpec::validate() const {
  if (!(start < stop)) throw invalid_argument("grid: requires start < stop");
  if (scale == Scale::linear && !(step > 0)) throw invalid_argument("grid: requires step > 0");
  if (scale == Scale::log) {
    if (!(start > 0)) throw invalid_argument("grid: log scale requires start > 0");
    if (count < 2) throw invalid_argument("grid: log scale requires count >= 2");
  }
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> p;
  if (scale == Scale::log) {
    const double a = std::log(start), b = std::log(stop);
    for (std::size_t i = 0; i < count; ++i) p.push_back(std::exp(a + (b - a) * double(i) / double(count - 1)));
    p.front() = start;
    p.back() = stop;
    return p;
  }
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step * (1 + 1e-12))) + 1;
  if (n > 10000000) throw invalid_argument("grid: too many points");
  for (std::size_t i = 0; i < n; ++i) p.push_back(start + step * double(i));
  return p;
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> f;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) f.push_back(part);
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw invalid_argument("grid: bad number '" + s + "'");
    return v;
  };
  GridSpec g;
  if (f.size() == 3) {
    g.start = num(f[0]);
    g.stop = num(f[1]);
    g.step = num(f[2]);
  } else if (f.size() == 4 && (f[3] == "log" || f[3] == "linear")) {
    g.start = num(f[0]);
    g.stop = num(f[1]);
    const double c = num(f[2]);
    if (!(c >= 2) || c != std::floor(c)) throw invalid_argument("grid: count must be an integer >= 2");
    g.count = std::size_t(c);
    if (f[3] == "log") {
      g.scale = Scale::log;
    } else {
      g.step = (g.stop - g.start) / (c - 1);
    }
  } else {
    throw invalid_argument("grid: expected start:stop:step or start:stop:count:log");
  }
  g.validate();
  return g;
}

namespace {

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string secs(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) os << fmt_double(v);
            else if constexpr (std::is_same_v<V, bool>) os << (v ? "true" : "false");
            else if constexpr (std::is_same_v<V, std::string>) os << csv_quote(v);
            else os << v;
          },
          r[i]);
    }
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  os << "[";
  for (std::size_t j = 0; j < t.rows.size(); ++j) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      std::visit([&](const auto& v) { o[t.columns[i]] = v; }, t.rows[j][i]);
    os << (j ? ",\n " : "\n ") << o.dump();
  }
  os << (t.rows.empty() ? "]\n" : "\n]\n");
}

namespace {

using Rows = std::vector<std::vector<Cell>>;
using Eval = std::function<Rows(double)>;

const std::vector<std::string> eval_columns{"repr", "value", "value_im", "err_estimate", "terms_used", "converged"};

// convergence failures become rows with converged = false
EvalResult guarded(const std::function<EvalResult()>& f) {
  try {
    return f();
  } catch (const convergence_failure& e) {
    auto r = e.partial();
    r.converged = false;
    return r;
  }
}

std::vector<Cell> eval_row(double x, const std::string& repr, const EvalResult& r) {
  return {x, repr, r.real(), r.imag(), r.err_estimate, std::int64_t(r.terms_used), r.converged};
}

EvalResult exact(double v) { return {v, 0.0, 0, true}; }

// evaluates the grid on a bounded pool, emitting rows in grid order
Rows evaluate(const std::vector<double>& grid, const Eval& f) {
  std::vector<Rows> out(grid.size());
  std::vector<std::exception_ptr> fail(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < grid.size();) {
      try {
        out[i] = f(grid[i]);
      } catch (...) {
        fail[i] = std::current_exception();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nw = std::min({hw, grid.size(), std::size_t(8)});
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < nw; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  Rows rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (fail[i]) std::rethrow_exception(fail[i]);
    for (auto& r : out[i]) rows.push_back(std::move(r));
  }
  return rows;
}

struct Options {
  double tol = 1e-10;
  std::size_t max_terms = 1000000;
  double eps = 1e-2;
  std::string format = "csv";
  std::string grid;
  std::size_t table_limit = 1000000;
  std::string out;
};

SeriesControl make_control(const Options& o) {
  SeriesControl c;
  c.tol = o.tol;
  c.max_terms = o.max_terms;
  c.eps_schedule = {o.eps, o.eps / 2, o.eps / 4};
  c.validate();
  return c;
}

template <class E>
std::vector<std::pair<std::string, E>> pick(const std::string& repr,
                                            const std::vector<std::pair<std::string, E>>& all,
                                            const std::vector<std::string>& all_set) {
  std::vector<std::pair<std::string, E>> r;
  for (const auto& p : all)
    if (repr == p.first || (repr == "all" && std::find(all_set.begin(), all_set.end(), p.first) != all_set.end()))
      r.push_back(p);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisor-spectrum quantum graph: traces, zeta functions, determinants"};
  app.name("qgraph");
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Columns (CSV header / JSON keys):\n"
      "  divisor         n,d\n"
      "  count           x,N\n"
      "  voronoi-check   fn,t|k0,lhs,rhs,residual,err_estimate,terms_used,converged\n"
      "  kappa-spectrum  kappa,index,k,bracket_width,unresolved\n"
      "  selftest        id,criterion,pass,seconds,time_limit,detail (plain table unless --format json or --out)\n"
      "  all others      <grid variable>,repr,value,value_im,err_estimate,terms_used,converged\n"
      "Exit codes: 0 ok, 1 usage error, 2 convergence failure or failed selftest.");
  Options o;
  app.add_option("--tol", o.tol, "series tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--max-terms", o.max_terms, "term cap per series")->capture_default_str();
  app.add_option("--eps", o.eps, "first step of the eps schedule (eps, eps/2, eps/4)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--grid", o.grid, "start:stop:step or start:stop:count:log over the subcommand's variable");
  app.add_option("--table-limit", o.table_limit, "divisor sieve size")->capture_default_str();
  app.add_option("--out", o.out, "write to this file instead of stdout");

  // per-subcommand state
  double x = 0, y = 0, xi = 0;
  std::size_t n = 1, N = 100, order = 3, edges = 40, points = 2000;
  double k0 = 1, kmin = 0.5, kmax = 1.5, kappa = 0;
  std::string repr, variant, closure = "dirichlet", fn = "exp", route = "all", kind = "regularized";
  bool critical = false, logv = false;
  std::vector<int> only;

  auto* s_div = app.add_subcommand("divisor", "d(n); columns n,d");
  s_div->add_option("--n", n, "n >= 1")->check(CLI::PositiveNumber);
  auto* s_count = app.add_subcommand("count", "N(x) = sum_{n<=x} d(n); columns x,N");
  s_count->add_option("--x", x, "x > 0");
  auto* s_wave = app.add_subcommand("wave-trace", "Theta(t) = sum d(n) e^{-nt}");
  s_wave->add_option("--t", x, "t > 0");
  s_wave->add_option("--repr", repr, "direct|lambert|weyl|po|po-integral|asymptotic|all")->default_str("direct");
  s_wave->add_option("--order", order, "asymptotic order M")->capture_default_str();
  auto* s_heat = app.add_subcommand("heat-trace", "sum d(n) e^{-(n^2+k^2)t}");
  s_heat->add_option("--t", x, "t > 0");
  s_heat->add_option("--k", y, "real k")->capture_default_str();
  s_heat->add_option("--repr", repr, "direct|omega|asymptotic|all")->default_str("direct");
  s_heat->add_option("--order", order, "asymptotic order")->capture_default_str();
  auto* s_res = app.add_subcommand("resolvent", "T(k) = sum d(n)/(n^2+k^2)");
  s_res->add_option("--k", x, "Re k");
  s_res->add_option("--k-imag", xi, "Im k")->capture_default_str();
  s_res->add_option("--repr", repr, "direct|po|series|asymptotic|all")->default_str("direct");
  auto* s_tau = app.add_subcommand("tau", "tau(k) = sum d(n) [1/(n+k) - 1/n]");
  s_tau->add_option("--k", x, "Re k");
  s_tau->add_option("--k-imag", xi, "Im k")->capture_default_str();
  s_tau->add_option("--repr", repr, "direct|digamma|series|asymptotic|all")->default_str("direct");
  auto* s_zeta = app.add_subcommand("zeta", "Zhat, Zhat~, Z_Delta over s, or the finite part at s=1 over k");
  s_zeta->add_option("--s", x, "Re s");
  s_zeta->add_option("--s-imag", xi, "Im s")->capture_default_str();
  s_zeta->add_option("--k", y, "shift k")->capture_default_str();
  s_zeta->add_option("--variant", variant, "zhat|zhat-tilde|zdelta|finite-part")->default_str("zhat");
  auto* s_gam = app.add_subcommand("gamma-tilde", "ln Gamma~(k), or psi~(k) with --repr psi");
  s_gam->add_option("--k", x, "Re k");
  s_gam->add_option("--k-imag", xi, "Im k")->capture_default_str();
  s_gam->add_option("--repr", repr, "weierstrass|product|integral|stirling|psi|all")->default_str("weierstrass");
  auto* s_det = app.add_subcommand("determinant", "D(k^2) = det(-Delta + k^2)");
  s_det->add_option("--k", x, "Re k");
  s_det->add_option("--k-imag", xi, "Im k")->capture_default_str();
  s_det->add_option("--repr", repr, "weierstrass|sinh|gamma|small-k|asymptotic|all")->default_str("weierstrass");
  s_det->add_option("--order", order, "small-k order")->capture_default_str();
  s_det->add_flag("--log", logv, "print ln D");
  auto* s_sec = app.add_subcommand("secular", "truncated or regularized secular function");
  s_sec->add_option("--k", x, "k");
  s_sec->add_option("--N", N, "truncation")->capture_default_str();
  s_sec->add_option("--kind", kind, "truncated|regularized")->capture_default_str();
  auto* s_sel = app.add_subcommand("selberg", "Z(s); with --critical, Z(ik) and the Hardy-like function");
  s_sel->add_option("--s", x, "Re s, or k with --critical");
  s_sel->add_option("--s-imag", xi, "Im s")->capture_default_str();
  s_sel->add_option("--repr", repr, "series|determinant|all  (critical: critical|reflected|hardy|fe-residual|all)")
      ->default_str("all");
  s_sel->add_flag("--critical", critical, "evaluate on the critical line");
  auto* s_rec = app.add_subcommand("reconstruct", "N(k) from Z, from D, and N^Osc from the Bessel series");
  s_rec->add_option("--k", x, "k > 0");
  s_rec->add_option("--route", route, "z|d|osc|exact|all")->capture_default_str();
  auto* s_vor = app.add_subcommand("voronoi-check", "both sides of the summation formula");
  s_vor->add_option("--fn", fn, "exp|power")->capture_default_str();
  s_vor->add_option("--t", x, "exp: rate t (grid variable)");
  s_vor->add_option("--s", y, "power: exponent s > 1/2");
  s_vor->add_option("--k0", k0, "power: shift k0 (grid variable)")->capture_default_str();
  auto* s_kap = app.add_subcommand("kappa-spectrum", "secular roots of the delta-coupled chain");
  s_kap->add_option("--kappa", kappa, "coupling (grid variable)")->capture_default_str();
  s_kap->add_option("--edges", edges, "N")->capture_default_str();
  s_kap->add_option("--kmin", kmin, "window start")->capture_default_str();
  s_kap->add_option("--kmax", kmax, "window end")->capture_default_str();
  s_kap->add_option("--grid-points", points, "scan resolution")->capture_default_str();
  s_kap->add_option("--closure", closure, "dirichlet|neumann")->capture_default_str();
  auto* s_self = app.add_subcommand("selftest", "acceptance suite; exit 0 iff all pass");
  s_self->add_option("--only", only, "criterion ids");

  std::vector<std::string> argv_s{"qgraph"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (auto& a : argv_s) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return ok;
    }
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return usage;
  }
  auto* sub = app.get_subcommands().front();
  auto given = [&](const char* opt) { return sub->count(opt) > 0; };

  Table table;
  try {
    const SeriesControl ctrl = make_control(o);
    std::unique_ptr<DivisorTable> dt;
    auto divisors = [&]() -> const DivisorTable& {
      if (!dt) dt = std::make_unique<DivisorTable>(o.table_limit);
      return *dt;
    };
    auto grid_of = [&](double single) {
      return o.grid.empty() ? std::vector<double>{single} : parse_grid(o.grid).points();
    };
    auto need = [&](bool cond, const std::string& what) {
      if (!cond) throw invalid_argument(sub->get_name() + ": " + what);
    };
    auto eval_table = [&](const std::string& var, double single, const Eval& f) {
      table.columns = {var};
      table.columns.insert(table.columns.end(), eval_columns.begin(), eval_columns.end());
      table.rows = evaluate(grid_of(single), f);
    };
    const std::string name = sub->get_name();
    if (auto* r = sub->get_option_no_throw("--repr"); r && repr.empty()) repr = r->get_default_str();

    if (name == "divisor") {
      need(given("--n") || !o.grid.empty(), "requires --n or --grid");
      const auto& t = divisors();
      table.columns = {"n", "d"};
      for (double v : grid_of(double(n))) {
        const double r = std::round(v);
        need(r >= 1 && r <= double(t.limit()), "n outside 1..table-limit");
        table.rows.push_back({std::int64_t(r), std::int64_t(t.d(std::size_t(r)))});
      }
    } else if (name == "count") {
      need(given("--x") || !o.grid.empty(), "requires --x or --grid");
      const auto& t = divisors();
      table.columns = {"x", "N"};
      for (double v : grid_of(x)) {
        need(v >= 0 && v <= double(t.limit()), "x outside [0, table-limit]");
        table.rows.push_back({v, std::int64_t(counting_function(v, t))});
      }
    } else if (name == "wave-trace") {
      need(given("--t") || !o.grid.empty(), "requires --t or --grid");
      const auto& t = divisors();
      using F = std::function<EvalResult(double)>;
      const std::vector<std::pair<std::string, F>> all{
          {"direct", [&](double v) { return theta_direct(v, t, ctrl); }},
          {"lambert", [&](double v) { return exact(theta_lambert(v)); }},
          {"weyl", [&](double v) { return exact(theta_weyl(v)); }},
          {"po", [&](double v) { return theta_po(v, t, ctrl); }},
          {"po-integral", [&](double v) { return theta_po_integral(v, t, 20, ctrl); }},
          {"asymptotic", [&](double v) { return exact(theta_asymptotic(v, unsigned(order))); }}};
      auto sel = pick(repr, all, {"direct", "weyl", "po"});
      need(!sel.empty(), "unknown --repr " + repr);
      eval_table("t", x, [&](double v) {
        Rows r;
        for (auto& [nm, f] : sel) r.push_back(eval_row(v, nm, guarded([&] { return f(v); })));
        return r;
      });
    } else if (name == "heat-trace") {
      need(given("--t") || !o.grid.empty(), "requires --t or --grid");
      const auto& t = divisors();
      using F = std::function<EvalResult(double)>;
      const std::vector<std::pair<std::string, F>> all{
          {"direct", [&](double v) { return heat_trace(v, y, t, ctrl); }},
          {"omega", [&](double v) { return heat_trace_omega(v, y, ctrl); }},
          {"asymptotic", [&](double v) { return EvalResult{heat_asymptotic(v, y, unsigned(order)), 0.0, 0, true}; }}};
      auto sel = pick(repr, all, {"direct", "omega"});
      need(!sel.empty(), "unknown --repr " + repr);
      eval_table("t", x, [&](double v) {
        Rows r;
        for (auto& [nm, f] : sel) r.push_back(eval_row(v, nm, guarded([&] { return f(v); })));
        return r;
      });
    } else if (name == "resolvent" || name == "tau") {
      need(given("--k") || !o.grid.empty(), "requires --k or --grid");
      const auto& t = divisors();
      using F = std::function<EvalResult(cplx)>;
      std::vector<std::pair<std::string, F>> all;
      if (name == "resolvent") {
        all = {{"direct", [&](cplx k) { return resolvent_trace_direct(k, t, ctrl); }},
               {"po", [&](cplx k) { return resolvent_trace_po(k, ctrl); }},
               {"series", [&](cplx k) { return resolvent_trace_series(k, ctrl); }},
               {"asymptotic", [&](cplx k) {
                  if (k.imag() != 0.0) throw domain_error("resolvent: asymptotic form needs real k");
                  return exact(resolvent_trace_asymptotic(k.real()));
                }}};
      } else {
        all = {{"direct", [&](cplx k) { return tau(k, t, ctrl, TauRepr::direct); }},
               {"digamma", [&](cplx k) { return tau(k, t, ctrl, TauRepr::digamma); }},
               {"series", [&](cplx k) { return tau(k, t, ctrl, TauRepr::series); }},
               {"asymptotic", [&](cplx k) {
                  if (k.imag() != 0.0) throw domain_error("tau: asymptotic form needs real k");
                  return exact(tau_asymptotic(k.real()));
                }}};
      }
      auto sel = pick(repr, all, {"direct", "po", "digamma", "series"});
      need(!sel.empty(), "unknown --repr " + repr);
      eval_table("k", x, [&](double v) {
        Rows r;
        for (auto& [nm, f] : sel) r.push_back(eval_row(v, nm, guarded([&] { return f(cplx(v, xi)); })));
        return r;
      });
    } else if (name == "zeta") {
      const auto& t = divisors();
      if (variant.empty()) variant = "zhat";
      if (variant == "finite-part") {
        eval_table("k", y, [&](double v) {
          return Rows{eval_row(v, "finite-part", guarded([&] { return finite_part_zhat(v, t, ctrl); }))};
        });
      } else {
        need(given("--s") || !o.grid.empty(), "requires --s or --grid");
        std::function<EvalResult(cplx)> f;
        if (variant == "zhat") f = [&](cplx s) { return zhat(s, y, t, ctrl); };
        else if (variant == "zhat-tilde") f = [&](cplx s) { return zhat_tilde(s, y, t, ctrl); };
        else if (variant == "zdelta") f = [&](cplx s) { return zdelta(s, y, t, ctrl); };
        else need(false, "unknown --variant " + variant);
        eval_table("s", x, [&](double v) { return Rows{eval_row(v, variant, guarded([&] { return f(cplx(v, xi)); }))}; });
      }
    } else if (name == "gamma-tilde") {
      need(given("--k") || !o.grid.empty(), "requires --k or --grid");
      const auto& t = divisors();
      using F = std::function<EvalResult(cplx)>;
      const std::vector<std::pair<std::string, F>> all{
          {"weierstrass", [&](cplx k) { return log_gamma_tilde(k, t, ctrl, GammaRepr::weierstrass); }},
          {"product", [&](cplx k) { return log_gamma_tilde(k, t, ctrl, GammaRepr::gamma_product); }},
          {"integral", [&](cplx k) { return log_gamma_tilde(k, t, ctrl, GammaRepr::integral); }},
          {"stirling", [&](cplx k) {
             if (k.imag() != 0.0) throw domain_error("gamma-tilde: Stirling form needs real k");
             return exact(gamma_tilde_stirling(k.real()));
           }},
          {"psi", [&](cplx k) { return psi_tilde(k, t, ctrl); }}};
      auto sel = pick(repr, all, {"weierstrass", "product", "integral"});
      need(!sel.empty(), "unknown --repr " + repr);
      eval_table("k", x, [&](double v) {
        Rows r;
        for (auto& [nm, f] : sel) r.push_back(eval_row(v, nm, guarded([&] { return f(cplx(v, xi)); })));
        return r;
      });
    } else if (name == "determinant") {
      need(given("--k") || !o.grid.empty(), "requires --k or --grid");
      const auto& t = divisors();
      using F = std::function<EvalResult(cplx)>;
      const std::vector<std::pair<std::string, F>> all{
          {"weierstrass", [&](cplx k) { return log_det_weierstrass(k, t, ctrl); }},
          {"sinh", [&](cplx k) { return log_det_sinh_product(k, ctrl); }},
          {"gamma", [&](cplx k) { return log_det_via_gamma(k, t, ctrl); }},
          {"small-k", [&](cplx k) { return EvalResult{log_det_small_k(k, int(order)), 0.0, order, true}; }},
          {"asymptotic", [&](cplx k) {
             if (k.imag() != 0.0 || !(k.real() > 0)) throw domain_error("determinant: asymptotic form needs k > 0");
             return exact(log_det_asymptotic(k.real()));
           }}};
      auto sel = pick(repr, all, {"weierstrass", "sinh", "gamma"});
      need(!sel.empty(), "unknown --repr " + repr);
      eval_table("k", x, [&](double v) {
        Rows r;
        for (auto& [nm, f] : sel) {
          const cplx k(v, xi);
          auto e = guarded([&] {
            // D vanishes on +-in; the log is -inf there
            if (!logv && nm != "small-k" && nm != "asymptotic") {
              if (nm == "weierstrass") return det_weierstrass(k, t, ctrl);
              if (nm == "sinh") return det_sinh_product(k, ctrl);
              return det_via_gamma(k, t, ctrl);
            }
            auto l = f(k);
            if (!logv) {
              l.value = std::exp(l.value);
              l.err_estimate *= std::abs(l.value);
            }
            return l;
          });
          r.push_back(eval_row(v, nm, e));
        }
        return r;
      });
    } else if (name == "secular") {
      need(given("--k") || !o.grid.empty(), "requires --k or --grid");
      need(kind == "truncated" || kind == "regularized", "unknown --kind " + kind);
      eval_table("k", x, [&](double v) {
        const EvalResult e = kind == "truncated" ? EvalResult{truncated_secular(v, N), 0.0, N, true}
                                                 : EvalResult{regularized_secular(v, N), 0.0, N, true};
        return Rows{eval_row(v, kind, e)};
      });
    } else if (name == "selberg") {
      need(given("--s") || !o.grid.empty(), "requires --s or --grid");
      const auto& t = divisors();
      using F = std::function<EvalResult(double)>;
      std::vector<std::pair<std::string, F>> all;
      std::vector<std::string> set;
      if (critical) {
        all = {{"critical", [&](double k) {
                  auto l = log_selberg_z_critical(k, t, ctrl);
                  const cplx z = std::exp(l.value);
                  return EvalResult{z, std::abs(z) * l.err_estimate, l.terms_used, l.converged};
                }},
               {"reflected", [&](double k) {
                  auto l = log_selberg_z_reflected(k, t, ctrl);
                  const cplx z = std::exp(l.value);
                  return EvalResult{z, std::abs(z) * l.err_estimate, l.terms_used, l.converged};
                }},
               {"hardy", [&](double k) {
                  auto p = critical_line_point(k, t, ctrl);
                  // value_im carries the relative imaginary residue
                  return EvalResult{cplx(p.hardy_value, p.hardy_imag), p.err_estimate, 0, true};
                }},
               {"fe-residual", [&](double k) { return exact(functional_equation_residual(k, t, ctrl)); }}};
        set = {"critical", "hardy", "fe-residual"};
      } else {
        all = {{"series", [&](double s) { return selberg_z(cplx(s, xi), t, ctrl); }},
               {"determinant", [&](double s) {
                  auto l = log_selberg_z_determinant(cplx(s, xi), t, ctrl);
                  const cplx z = std::exp(l.value);
                  return EvalResult{z, std::abs(z) * l.err_estimate, l.terms_used, l.converged};
                }}};
        set = {"series", "determinant"};
      }
      auto sel = pick(repr, all, set);
      need(!sel.empty(), "unknown --repr " + repr);
      eval_table(critical ? "k" : "s", x, [&](double v) {
        Rows r;
        for (auto& [nm, f] : sel) r.push_back(eval_row(v, nm, guarded([&] { return f(v); })));
        return r;
      });
    } else if (name == "reconstruct") {
      need(given("--k") || !o.grid.empty(), "requires --k or --grid");
      const auto& t = divisors();
      using F = std::function<EvalResult(double)>;
      const std::vector<std::pair<std::string, F>> all{
          {"exact", [&](double k) { return exact(double(counting_function(k, t))); }},
          {"z", [&](double k) { return counting_reconstruction(k, t, ctrl); }},
          {"d", [&](double k) {
             // N(k) - d(k)/2 + d(k)/2
             auto e = counting_reconstruction_determinant(k, t, ctrl);
             e.value += 0.5 * divisor_at(k, t);
             return e;
           }},
          {"osc", [&](double k) { return n_osc_bessel(k, t, ctrl); }}};
      auto sel = pick(route, all, {"exact", "z", "d", "osc"});
      need(!sel.empty(), "unknown --route " + route);
      eval_table("k", x, [&](double v) {
        Rows r;
        for (auto& [nm, f] : sel) r.push_back(eval_row(v, nm, guarded([&] { return f(v); })));
        return r;
      });
    } else if (name == "voronoi-check") {
      need(fn == "exp" || fn == "power", "unknown --fn " + fn);
      need(fn == "power" || given("--t") || !o.grid.empty(), "exp requires --t or --grid");
      need(fn == "exp" || given("--s"), "power requires --s");
      const auto& t = divisors();
      table.columns = {"fn", fn == "exp" ? "t" : "k0", "lhs", "rhs", "residual", "err_estimate", "terms_used",
                       "converged"};
      table.rows = evaluate(grid_of(fn == "exp" ? x : k0), [&](double v) {
        const auto f = fn == "exp" ? exp_decay(v) : power_resolvent(y, v);
        auto l = guarded([&] { return voronoi_lhs(f, t, ctrl); });
        auto r = guarded([&] { return voronoi_rhs(f, t, ctrl); });
        return Rows{{f.id, v, l.real(), r.real(), std::abs(l.real() - r.real()), l.err_estimate + r.err_estimate,
                     std::int64_t(r.terms_used), l.converged && r.converged}};
      });
    } else if (name == "kappa-spectrum") {
      need(closure == "dirichlet" || closure == "neumann", "unknown --closure " + closure);
      table.columns = {"kappa", "index", "k", "bracket_width", "unresolved"};
      table.rows = evaluate(grid_of(kappa), [&](double v) {
        ChainSpec s{v, edges, kmin, kmax, points, closure == "dirichlet" ? Closure::dirichlet : Closure::neumann};
        auto sp = spectrum(s, ctrl);
        Rows r;
        for (std::size_t i = 0; i < sp.roots.size(); ++i)
          r.push_back({v, std::int64_t(i), sp.roots[i].k, sp.roots[i].bracket_width, sp.unresolved});
        return r;
      });
    } else if (name == "selftest") {
      auto res = run_selftest(only, o.table_limit);
      table.columns = {"id", "criterion", "pass", "seconds", "time_limit", "detail"};
      bool all_pass = true;
      for (auto& c : res) {
        all_pass = all_pass && c.pass;
        table.rows.push_back({std::int64_t(c.id), c.name, c.pass, c.seconds, c.time_limit, c.detail});
      }
      if (o.format == "csv" && o.out.empty()) {
        for (auto& c : res)
          out << (c.pass ? "PASS " : "FAIL ") << (c.id < 10 ? "0" : "") << c.id << "  " << c.name << "  ("
              << secs(c.seconds) << " s)  " << c.detail << '\n';
        out << (all_pass ? "all criteria passed\n" : "some criteria FAILED\n");
        return all_pass ? ok : not_converged;
      }
      std::ofstream file;
      if (!o.out.empty()) file.open(o.out);
      std::ostream& os = o.out.empty() ? out : file;
      o.format == "json" ? write_json(table, os) : write_csv(table, os);
      return all_pass ? ok : not_converged;
    }
  } catch (const convergence_failure& e) {
    err << "convergence failure: " << e.what() << '\n';
    return not_converged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "error: cannot open " << o.out << '\n';
      return usage;
    }
  }
  std::ostream& os = o.out.empty() ? out : file;
  o.format == "json" ? write_json(table, os) : write_csv(table, os);

  const auto conv = std::find(table.columns.begin(), table.columns.end(), "converged");
  if (conv != table.columns.end()) {
    const auto c = std::size_t(conv - table.columns.begin());
    for (const auto& r : table.rows)
      if (!std::get<bool>(r[c])) return not_converged;
  }
  return ok;
}

int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

}  // namespace qgraph::cli
