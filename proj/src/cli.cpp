#include "modform/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "modform/acceptance.hpp"
#include "modform/asymptotics.hpp"
#include "modform/catalog.hpp"
#include "modform/djbasis.hpp"
#include "modform/eigen.hpp"
#include "modform/quadform.hpp"
#include "modform/ratioset.hpp"

namespace modform {

namespace {

struct Globals {
  std::string format;  // empty: the command's default
  std::string out_path;
};

class Session {
 public:
  Session(const Globals& g, std::ostream& out, std::ostream& err) : globals_(g), stdout_(out), err_(err) {}

  std::ostream& out() {
    if (globals_.out_path.empty()) return stdout_;
    if (!file_) {
      file_.emplace(globals_.out_path);
      if (!*file_) throw Error(Errc::io, "cannot write '" + globals_.out_path + "'");
    }
    return *file_;
  }
  std::ostream& err() { return err_; }

  bool json(const char* fallback) const {
    const std::string f = globals_.format.empty() ? fallback : globals_.format;
    return f == "json";
  }

  void warn(const std::string& msg) { err_ << "modform: warning: " << msg << "\n"; }

  // Applies MODFORM_PREC_CAP.
  long capped(long prec) {
    if (prec < 0) throw Error(Errc::precision, "precision must be non-negative");
    if (const char* cap = std::getenv("MODFORM_PREC_CAP")) {
      char* end = nullptr;
      const long c = std::strtol(cap, &end, 10);
      if (end == cap || *end != '\0' || c < 0) throw Error(Errc::parse, "MODFORM_PREC_CAP must be a non-negative integer");
      if (prec > c) {
        throw Error(Errc::precision, "precision " + std::to_string(prec) + " exceeds MODFORM_PREC_CAP=" + std::to_string(c));
      }
    }
    return prec;
  }

 private:
  const Globals& globals_;
  std::ostream& stdout_;
  std::ostream& err_;
  std::optional<std::ofstream> file_;
};

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::scientific << std::setprecision(16) << v;
  return os.str();
}

void emit_series(Session& s, const FormSeries& f) {
  if (s.json("csv")) {
    nlohmann::json j = std::visit([](const auto& series) { return to_json(series); }, f.series);
    j["weight"] = f.weight;
    s.out() << j.dump(2) << "\n";
  } else {
    std::visit([&](const auto& series) { write_csv(s.out(), series, series.prec()); }, f.series);
  }
}

// ---------------------------------------------------------------------------

struct BasisArgs {
  long weight = 12;
  long prec = 20;
};

void cmd_basis(Session& s, const BasisArgs& a) {
  const auto basis = miller_basis(a.weight, s.capped(a.prec));
  if (s.json("csv")) {
    nlohmann::json j;
    j["weight"] = a.weight;
    j["basis"] = nlohmann::json::array();
    for (const auto& g : basis) j["basis"].push_back(to_json(g.series));
    s.out() << j.dump(2) << "\n";
    return;
  }
  auto& out = s.out();
  out << "n";
  for (size_t i = 0; i < basis.size(); ++i) out << ",g" << i;
  out << "\n";
  for (long n = 0; n <= a.prec; ++n) {
    out << n;
    for (const auto& g : basis) out << ',' << to_string(g.series.coefficient(n));
    out << "\n";
  }
}

void cmd_eigen(Session& s, const BasisArgs& a) {
  const long prec = s.capped(std::max(a.prec, 2 * (dim_Sk(a.weight) + 1)));
  if (prec != a.prec) s.warn("precision raised from " + std::to_string(a.prec) + " to " + std::to_string(prec));
  const auto pkgs = eigen_decompose(a.weight, prec);
  if (s.json("json")) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : pkgs) {
      nlohmann::json e = to_json(p);
      e["embeddings"] = nlohmann::json::array();
      for (const auto& r : p.embeddings) {
        std::ostringstream os;
        os << std::setprecision(40) << r;
        e["embeddings"].push_back(os.str());
      }
      j.push_back(e);
    }
    s.out() << j.dump(2) << "\n";
    return;
  }
  auto& out = s.out();
  out << "n";
  for (size_t i = 0; i < pkgs.size(); ++i) out << ",f" << i;
  out << "\n";
  for (long n = 0; n <= prec; ++n) {
    out << n;
    for (const auto& p : pkgs) out << ',' << p.series.coefficient(n).to_string();
    out << "\n";
  }
}

struct DjArgs {
  long weight = 0;
  long m = 1;
  long prec = 20;
};

void cmd_dj(Session& s, const DjArgs& a) {
  const WeaklyForm f = dj_basis_element(a.weight, a.m, s.capped(a.prec));
  emit_series(s, FormSeries::rational(f.series, f.weight));
}

struct HeckeArgs {
  std::string f;
  std::optional<long> weight;
  long p = 2;
  long prec = 20;
};

// T_p applied to every Miller basis element of M_k.
void hecke_on_basis(Session& s, long k, long p, long prec) {
  const auto basis = miller_basis(k, s.capped(prec * p));
  std::vector<ModularForm> images;
  for (const auto& g : basis) images.push_back(hecke_Tp(g, p, prec));
  if (s.json("csv")) {
    nlohmann::json j;
    j["weight"] = k;
    j["p"] = p;
    j["images"] = nlohmann::json::array();
    for (const auto& t : images) j["images"].push_back(to_json(t.series));
    s.out() << j.dump(2) << "\n";
    return;
  }
  auto& out = s.out();
  out << "n";
  for (size_t i = 0; i < images.size(); ++i) out << ",T" << p << "_g" << i;
  out << "\n";
  for (long n = 0; n <= prec; ++n) {
    out << n;
    for (const auto& t : images) out << ',' << to_string(t.series.coefficient(n));
    out << "\n";
  }
}

void cmd_hecke(Session& s, const HeckeArgs& a) {
  if (a.p < 2 || !is_prime(a.p)) throw Error(Errc::invalid_argument, "--p must be prime");
  if (a.f.empty()) {
    if (!a.weight) throw Error(Errc::invalid_argument, "hecke needs --f SPEC or --weight k");
    hecke_on_basis(s, *a.weight, a.p, a.prec);
    return;
  }
  if (a.weight && *a.weight != spec_weight(a.f)) {
    throw Error(Errc::invalid_argument, "--weight disagrees with the weight of '" + a.f + "'");
  }
  const ResolvedForm r = resolve_form(a.f, s.capped(a.prec * a.p));
  FormSeries out = r.form;
  std::visit([&](const auto& series) { out.series = hecke_tp_series(series, r.form.weight, a.p); }, r.form.series);
  emit_series(s, out);
}

struct AsympArgs {
  std::string kind = "ck";
  long weight = 0;
  long m = 1;
  long from = 200;
  long to = 800;
  long step = 1;
};

void cmd_asymp(Session& s, const AsympArgs& a) {
  s.capped(a.to);
  const auto grid = integer_grid(a.from, a.to, a.step);
  Diagnostic d;
  if (a.kind == "ck") {
    d = ck_diagnostic(a.weight, a.m, grid);
  } else if (a.kind == "dk") {
    d = dk_diagnostic(a.weight, grid);
  } else {
    throw Error(Errc::invalid_argument, "--kind must be ck or dk");
  }
  if (s.json("csv")) {
    nlohmann::json j;
    j["kind"] = a.kind;
    j["weight"] = a.weight;
    if (a.kind == "ck") j["m"] = a.m;
    j["tail_variation"] = sci(d.tail_variation);
    j["rows"] = nlohmann::json::array();
    for (const auto& r : d.rows) {
      j["rows"].push_back({{"n", r.n}, {"estimate", sci(r.value)}, {"relative_change", r.skipped ? "nan" : sci(r.relative_change)}});
    }
    s.out() << j.dump(2) << "\n";
    return;
  }
  auto& out = s.out();
  out << "n,estimate,relative_change\n";
  for (const auto& r : d.rows) {
    out << r.n << ',' << sci(r.value) << ',' << (r.skipped ? "nan" : sci(r.relative_change)) << "\n";
  }
  s.err() << "modform: tail relative variation " << sci(d.tail_variation) << "\n";
}

struct ThetaArgs {
  std::string gram = "e8";
  long prec = 20;
  std::uint64_t budget = kDefaultPointBudget;
};

void cmd_theta(Session& s, const ThetaArgs& a) {
  const ThetaSeries t = theta_series(GramMatrix::named_or_file(a.gram), s.capped(a.prec), a.budget);
  if (s.json("csv")) {
    nlohmann::json j = to_json(t.series);
    j["weight"] = t.weight;
    j["enumerated_through"] = t.enumerated_through;
    j["gram"] = t.gram.to_json();
    s.out() << j.dump(2) << "\n";
    return;
  }
  auto& out = s.out();
  out << "n,r(n)\n";
  for (long n = 0; n <= t.series.prec(); ++n) out << n << ',' << to_string(t.series.coefficient(n)) << "\n";
}

void emit_ratio_log(std::ostream& out, const RatioSet& rs) {
  out << "p,a_f(p),a_g(p),ratio_id\n";
  for (const auto& e : rs.log) out << e.p << ',' << e.a_f << ',' << e.a_g << ',' << e.point << "\n";
}

struct QratioArgs {
  std::string gram1 = "e8e8";
  std::string gram2 = "d16plus";
  long xmax = 1000;
  std::uint64_t budget = kDefaultPointBudget;
};

void cmd_qratio(Session& s, const QratioArgs& a) {
  const RatioSet rs = ratio_set_quadforms(GramMatrix::named_or_file(a.gram1), GramMatrix::named_or_file(a.gram2),
                                          s.capped(a.xmax), a.budget);
  if (s.json("json")) {
    nlohmann::json j = rs.summary_json();
    j["gram1"] = a.gram1;
    j["gram2"] = a.gram2;
    s.out() << j.dump(2) << "\n";
  } else {
    emit_ratio_log(s.out(), rs);
  }
}

struct RatioArgs {
  std::string f = "delta";
  std::string g = "delta";
  long xmax = 100;
  long prec = -1;
  std::vector<long> grid;
  bool prop = false;
};

void cmd_ratio(Session& s, const RatioArgs& a) {
  if (a.xmax < 2) throw Error(Errc::invalid_argument, "--xmax must be at least 2");
  const long o = std::max(weight_split(spec_weight(a.f)).o, weight_split(spec_weight(a.g)).o);
  long x = a.xmax;
  for (long v : a.grid) x = std::max(x, v);
  const long fallback = std::max(2 * x, o + 20);
  long prec = a.prec < 0 ? fallback : a.prec;
  if (prec < x) {
    s.warn("precision raised from " + std::to_string(prec) + " to " + std::to_string(fallback));
    prec = fallback;
  }
  s.capped(prec);
  FormSeries f = resolve_form(a.f, prec).form;
  FormSeries g = resolve_form(a.g, prec).form;

  std::optional<Proportionality> prop;
  if (a.prop) {
    const long pole = std::max(f.pole_order(), g.pole_order());
    const long need = f.weight == g.weight ? proportionality_precision(f.weight, pole) : 0;
    if (need > prec) {
      s.warn("precision raised from " + std::to_string(prec) + " to " + std::to_string(need) + " for the proportionality test");
      prec = s.capped(need);
      f = resolve_form(a.f, prec).form;
      g = resolve_form(a.g, prec).form;
    }
    prop = proportionality_test(f, g, pole);
  }

  const RatioSet rs = ratio_set(f, g, a.xmax);
  if (!s.json("json")) {
    emit_ratio_log(s.out(), rs);
    return;
  }
  nlohmann::json j = rs.summary_json();
  j["f"] = a.f;
  j["g"] = a.g;
  j["prec"] = prec;
  if (!a.grid.empty()) {
    const RatioGrowth growth = ratio_growth(f, g, a.grid);
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [xx, c] : growth.counts) counts.push_back({{"x", xx}, {"size", c}});
    j["growth"] = {{"counts", counts}, {"verdict", growth.verdict}, {"verdict_kind", "heuristic"}};
  }
  if (prop) {
    j["proportionality"] = {{"constant", prop->constant ? nlohmann::json(prop->constant->to_string()) : nlohmann::json()},
                            {"reason", prop->reason},
                            {"compared_through", prop->compared_through}};
  }
  s.out() << j.dump(2) << "\n";
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-expansions of level-one modular forms, ratio sets and theta series", "modform"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", globals.out_path, "Write output to PATH instead of stdout");

  BasisArgs basis_args;
  auto* basis = app.add_subcommand("basis", "Miller basis of M_k");
  basis->add_option("--weight,-k", basis_args.weight, "Weight k")->required();
  basis->add_option("--prec", basis_args.prec, "Precision");

  BasisArgs eigen_args;
  auto* eigen = app.add_subcommand("eigen", "Normalized Hecke eigenforms of S_k");
  eigen->add_option("--weight,-k", eigen_args.weight, "Weight k")->required();
  eigen->add_option("--prec", eigen_args.prec, "Precision");

  DjArgs dj_args;
  auto* dj = app.add_subcommand("dj", "Duke-Jenkins basis element f_{k,m}");
  dj->add_option("--weight,-k", dj_args.weight, "Weight k")->required();
  dj->add_option("--m,-m", dj_args.m, "Pole order m")->required();
  dj->add_option("--prec", dj_args.prec, "Precision");

  HeckeArgs hecke_args;
  auto* hecke = app.add_subcommand("hecke", "Apply T_p to a form");
  hecke->add_option("--f", hecke_args.f, "Form spec");
  hecke->add_option("--weight,-k", hecke_args.weight, "Weight k (applies T_p to the Miller basis when --f is absent)");
  hecke->add_option("--p,-p", hecke_args.p, "Prime p")->required();
  hecke->add_option("--prec", hecke_args.prec, "Output precision");

  AsympArgs asymp_args;
  auto* asymp = app.add_subcommand("asymp", "C_k / D_k stabilization diagnostics");
  asymp->add_option("--kind", asymp_args.kind, "ck or dk")->check(CLI::IsMember({"ck", "dk"}));
  asymp->add_option("--weight,-k", asymp_args.weight, "Weight k");
  asymp->add_option("--m,-m", asymp_args.m, "Pole order m (ck)");
  asymp->add_option("--from", asymp_args.from, "First n");
  asymp->add_option("--to,--nmax", asymp_args.to, "Last n");
  asymp->add_option("--step", asymp_args.step, "Grid step");

  ThetaArgs theta_args;
  auto* theta = app.add_subcommand("theta", "Theta series of an even unimodular Gram matrix");
  theta->add_option("--gram", theta_args.gram, "e8, e8e8, d16plus or a JSON file");
  theta->add_option("--prec", theta_args.prec, "Precision");
  theta->add_option("--budget", theta_args.budget, "Lattice point budget for direct enumeration");

  QratioArgs qratio_args;
  auto* qratio = app.add_subcommand("qratio", "Ratio set of two quadratic forms");
  qratio->add_option("--gram1", qratio_args.gram1, "First Gram matrix")->required();
  qratio->add_option("--gram2", qratio_args.gram2, "Second Gram matrix")->required();
  qratio->add_option("--xmax", qratio_args.xmax, "Prime bound X");
  qratio->add_option("--budget", qratio_args.budget, "Lattice point budget for direct enumeration");

  RatioArgs ratio_args;
  auto* ratio = app.add_subcommand("ratio", "Ratio set R_X(f, g)");
  ratio->add_option("--f", ratio_args.f, "Form spec f")->required();
  ratio->add_option("--g", ratio_args.g, "Form spec g")->required();
  ratio->add_option("--xmax", ratio_args.xmax, "Prime bound X");
  ratio->add_option("--prec", ratio_args.prec, "Precision (default max(2X, o_k + 20))");
  ratio->add_option("--grid", ratio_args.grid, "X values for the growth table")->delimiter(',');
  ratio->add_flag("--prop", ratio_args.prop, "Run the exact proportionality test");

  std::vector<int> only;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--only", only, "Criterion numbers")->delimiter(',')->check(CLI::Range(1, kCriterionCount));

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (auto& c : msg) {
      if (c == '\n') c = ' ';
    }
    err << "modform: error[parse]: " << msg << "\n";
    return 2;
  }

  Session session(globals, out, err);
  try {
    if (*basis) cmd_basis(session, basis_args);
    if (*eigen) cmd_eigen(session, eigen_args);
    if (*dj) cmd_dj(session, dj_args);
    if (*hecke) cmd_hecke(session, hecke_args);
    if (*asymp) cmd_asymp(session, asymp_args);
    if (*theta) cmd_theta(session, theta_args);
    if (*qratio) cmd_qratio(session, qratio_args);
    if (*ratio) cmd_ratio(session, ratio_args);
    if (*verify) return run_acceptance(only, session.out()) ? 0 : 1;
    session.out().flush();
  } catch (const Error& e) {
    err << "modform: error[" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "modform: error[internal]: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace modform
