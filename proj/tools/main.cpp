// fimalg command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "fimalg/closure_calculus.hpp"
#include "fimalg/expression_parser.hpp"
#include "fimalg/lamplighter.hpp"
#include "fimalg/presented_monoid.hpp"
#include "fimalg/rational_series.hpp"
#include "fimalg/representation.hpp"
#include "fimalg/skew_construction.hpp"
#include "fimalg/suites.hpp"

using namespace fimalg;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kResource = 3 };

struct Result {
  bool ok = true;
  json report;
  std::string text;
};

struct Globals {
  long T = 64;
  std::size_t period_bound = 64;
  std::string schedule_file;
  std::string json_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Words may be written with bare symbols: [[x,0,1]] reads as [["x",0,1]].
MWord read_word(const std::string& text) {
  static const std::regex bare(R"(([\[,]\s*)([A-Za-z_][A-Za-z_0-9]*)(\s*[,\]]))");
  std::string quoted = text;
  for (int pass = 0; pass < 2; ++pass) quoted = std::regex_replace(quoted, bare, "$1\"$2\"$3");
  return MWord::from_json(quoted);
}

json rank_json(const RankResult& r) {
  json j;
  j["T"] = r.T;
  j["ranks"] = r.ranks;
  j["lower"] = r.lower().str();
  j["upper"] = r.upper().str();
  j["width"] = r.width().str();
  j["exact"] = r.exact ? json(r.exact->str()) : json(nullptr);
  if (r.pattern) {
    json p;
    p["n0"] = r.pattern->n0;
    p["period"] = r.pattern->period;
    for (const auto& [a, b] : r.pattern->residues) p["residues"].push_back({a.str(), b.str()});
    j["pattern"] = p;
  }
  return j;
}

std::string canonical_json(const CanonicalM& c) {
  json j;
  j["level"] = c.level;
  j["p"] = c.p;
  j["q"] = c.q;
  j["r"] = c.r;
  json a = json::object();
  for (const auto& [i, m] : c.alpha) a[std::to_string(i)] = m;
  j["alpha"] = a;
  return j.dump();
}

Result stability_result(const std::vector<StabilityCheck>& checks) {
  Result r;
  r.report["checks"] = json::array();
  for (const auto& c : checks) {
    json j;
    j["name"] = c.name;
    j["n_range"] = {c.n_lo, c.n_hi};
    j["stabilizes_from"] = c.stabilizes_from;
    j["proof_threshold"] = c.proof_threshold;
    j["threshold_sufficient"] = c.threshold_sufficient;
    j["failures"] = c.failures;
    r.report["checks"].push_back(j);
    r.ok = r.ok && c.threshold_sufficient;
    r.text += std::string(c.threshold_sufficient ? "PASS " : "FAIL ") + c.name + " (stabilizes from " +
              std::to_string(c.stabilizes_from) + ", proof threshold " + std::to_string(c.proof_threshold) + ")\n";
  }
  r.report["ok"] = r.ok;
  return r;
}

SigmaSchedule load_schedule(const Globals& g) {
  if (g.schedule_file.empty()) return SigmaSchedule({Polynomial::parse("1+x")});
  return SigmaSchedule::from_json(read_file(g.schedule_file));
}

void emit(const Globals& g, const std::string& command, const Result& r) {
  std::string path = g.json_path;
  if (path.empty()) {
    if (const char* dir = std::getenv("FIMALG_REPORT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / (command + ".json")).string();
    }
  }
  if (path == "-") {
    std::cout << r.report.dump(2) << "\n";
    return;
  }
  std::cout << r.text;
  if (!r.text.empty() && r.text.back() != '\n') std::cout << "\n";
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << r.report.dump(2) << "\n";
  }
}

int fail_with(const Globals& g, int code, const std::string& cause, const std::string& message) {
  json j;
  j["error"] = cause;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
  if (!g.json_path.empty() && g.json_path != "-") {
    std::ofstream out(g.json_path);
    out << j.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the algebra of the monogenic free inverse monoid"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML configuration file");
  Globals g;
  app.add_option("--T", g.T, "Truncation level")->capture_default_str()->check(CLI::Range(0L, 4096L));
  app.add_option("--period-bound", g.period_bound, "Largest period tried for zero sets")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  app.add_option("--schedule", g.schedule_file, "JSON file with the f_1, f_2, ... coefficient lists")
      ->check(CLI::ExistingFile);
  app.add_option("--json", g.json_path, "Write the JSON report here ('-' for stdout)");
  app.fallthrough();

  std::string command;
  std::function<Result()> action;
  auto on = [&](CLI::App* sub, std::function<Result()> f) {
    sub->callback([&, sub, f] {
      command = sub->get_name();
      action = f;
    });
  };

  // rank / eval
  std::string expr;
  auto* rank = app.add_subcommand("rank", "von Neumann rank of an expression");
  rank->add_option("expr", expr, "Expression, e.g. \"s + adj(s)\"")->required();
  on(rank, [&] {
    auto r = vn_rank(eval(parse_expression(expr), g.T));
    Result res;
    res.report["expr"] = expr;
    res.report["rank"] = rank_json(r);
    res.text = r.exact ? "exact " + r.exact->str()
                       : "enclosure [" + r.lower().str() + ", " + r.upper().str() + "]";
    return res;
  });

  long component = -1;
  auto* evalc = app.add_subcommand("eval", "Componentwise value of an expression");
  evalc->add_option("expr", expr, "Expression")->required();
  evalc->add_option("--component", component, "Print this component's matrix");
  on(evalc, [&] {
    auto e = parse_expression(expr);
    auto v = eval(e, g.T);
    Result res;
    res.report["expr"] = e.str();
    res.report["T"] = g.T;
    res.report["ranks"] = rank_sequence(v);
    res.text = e.str() + "\nranks:";
    for (auto k : rank_sequence(v)) res.text += " " + std::to_string(k);
    if (component >= 0) {
      if (component > g.T) throw std::invalid_argument("component beyond T");
      json rows = json::array();
      res.text += "\ncomponent " + std::to_string(component) + ":\n";
      for (const auto& row : v.component(component).to_dense()) {
        json jr = json::array();
        for (const auto& x : row) {
          jr.push_back(x.str());
          res.text += " " + x.str();
        }
        rows.push_back(jr);
        res.text += "\n";
      }
      res.report["component"] = {{"n", component}, {"matrix", rows}};
    }
    return res;
  });

  // monoid
  auto* monoid = app.add_subcommand("monoid", "Words in the monoid M");
  monoid->require_subcommand(1);
  // Single strings: CLI11 would split "[[x,0,1]]" as a bracketed list.
  std::string w1, w2, w3, w4;
  long oracle_size = 0, oracle_index = 6;
  auto* mnorm = monoid->add_subcommand("normalize", "Canonical form");
  mnorm->add_option("word", w1, "Word as [[sym,index,mult],...]")->required();
  on(mnorm, [&] {
    auto c = canonicalize_M(read_word(w1));
    Result res;
    res.report["canonical"] = json::parse(canonical_json(c));
    res.report["word"] = c.str();
    res.text = c.word().str() + "  [" + c.str() + "]";
    return res;
  });
  auto* meq = monoid->add_subcommand("equal", "Equality in M");
  meq->add_option("w1", w1, "First word")->required();
  meq->add_option("w2", w2, "Second word")->required();
  meq->add_option("--oracle-size", oracle_size, "Also run the bounded oracle with this size bound");
  meq->add_option("--oracle-index", oracle_index, "Index bound of the oracle")->capture_default_str();
  on(meq, [&] {
    auto a = read_word(w1), b = read_word(w2);
    bool eq = equals_M(a, b);
    Result res;
    res.report["equal"] = eq;
    res.text = eq ? "equal" : "not equal";
    if (oracle_size > 0) {
      auto o = oracle_equiv(m_presentation(oracle_index), a, b, oracle_size, oracle_index);
      bool found = o == OracleResult::Equal;
      res.report["oracle"] = found ? "equal" : "not found within bounds";
      res.text += found ? " (oracle: equal)" : " (oracle: not found within bounds)";
      res.ok = !found || eq;
    }
    return res;
  });
  auto* madd = monoid->add_subcommand("add", "Sum in canonical form");
  madd->add_option("w1", w1, "First word")->required();
  madd->add_option("w2", w2, "Second word")->required();
  on(madd, [&] {
    auto c = add_M(canonicalize_M(read_word(w1)), canonicalize_M(read_word(w2)));
    Result res;
    res.report["canonical"] = json::parse(canonical_json(c));
    res.report["word"] = c.str();
    res.text = c.word().str() + "  [" + c.str() + "]";
    return res;
  });
  auto* mle = monoid->add_subcommand("le", "Bounded search for d with w1 + d = w2");
  mle->add_option("w1", w1, "First word")->required();
  mle->add_option("w2", w2, "Second word")->required();
  on(mle, [&] {
    auto d = le_bounded(read_word(w1), read_word(w2));
    Result res;
    res.report["le"] = d.has_value();
    res.report["witness"] = d ? json(d->to_json()) : json(nullptr);
    res.text = d ? "<= with witness " + d->str() : "no witness within bounds";
    return res;
  });
  auto* mref = monoid->add_subcommand("refine", "Refinement of w1a + w1b = w2a + w2b");
  mref->add_option("w1a", w1)->required();
  mref->add_option("w1b", w2)->required();
  mref->add_option("w2a", w3)->required();
  mref->add_option("w2b", w4)->required();
  on(mref, [&] {
    auto r = refine_bounded(read_word(w1), read_word(w2), read_word(w3), read_word(w4));
    Result res;
    if (!r) {
      res.report["refinement"] = nullptr;
      res.text = "no refinement within bounds";
      return res;
    }
    json m = json::array();
    for (const auto& row : *r) m.push_back({row[0].str(), row[1].str()});
    res.report["refinement"] = m;
    res.text = "[[" + (*r)[0][0].str() + ", " + (*r)[0][1].str() + "], [" + (*r)[1][0].str() + ", " +
               (*r)[1][1].str() + "]]";
    return res;
  });

  // series
  auto* series = app.add_subcommand("series", "Rational series");
  series->require_subcommand(1);
  std::vector<std::string> sargs;
  auto* shad = series->add_subcommand("hadamard", "Hadamard product");
  shad->add_option("series", sargs, "Two series P/Q")->required()->expected(2);
  on(shad, [&] {
    auto h = hadamard(RationalSeries::parse(sargs[0]), RationalSeries::parse(sargs[1]));
    Result res;
    res.report["product"] = h.str();
    json c = json::array();
    for (const auto& x : h.coeffs(10)) c.push_back(x.str());
    res.report["coefficients"] = c;
    res.text = h.str();
    return res;
  });
  auto* szero = series->add_subcommand("zeros", "Certified zero set");
  szero->add_option("series", sargs, "Series P/Q")->required()->expected(1);
  on(szero, [&] {
    auto z = zero_set(RationalSeries::parse(sargs[0]), g.period_bound);
    Result res;
    res.report["zero_set"] = z.set.str();
    res.report["fully_certified"] = z.fully_certified();
    json cls = json::array();
    for (const auto& c : z.classes)
      cls.push_back({{"residue", c.residue}, {"zero", c.zero}, {"certified", c.certified},
                     {"first_index", c.first_index}, {"checked_terms", c.checked_terms}});
    res.report["classes"] = cls;
    res.text = z.set.str() + (z.fully_certified() ? " (certified)" : " (some classes window-only)");
    return res;
  });
  auto* sq = series->add_subcommand("qinv", "Quasi-inverse in the Hadamard quotient ring");
  sq->add_option("series", sargs, "Series P/Q")->required()->expected(1);
  on(sq, [&] {
    auto q = q_quasi_inverse(QFraction::from_series(RationalSeries::parse(sargs[0])), g.period_bound);
    Result res;
    res.report["num"] = q.num().str();
    res.report["den"] = q.den().str();
    json c = json::array();
    for (std::size_t n = 0; n < 10; ++n) c.push_back(q.coeff(n).str());
    res.report["coefficients"] = c;
    res.text = "(" + q.num().str() + ") / (" + q.den().str() + ")";
    return res;
  });

  // skew
  auto* skew = app.add_subcommand("skew", "The matrices w_n, w_n*");
  skew->require_subcommand(1);
  std::string parts = "abcdef", recipe;
  long exponent = 5, n_lo = 1, n_hi = 200, si = 1, sj = 1, tau_n = 4;
  auto* sv = skew->add_subcommand("verify", "Parts (a)-(f) over a range of n");
  sv->add_option("--parts", parts, "Subset of abcdef")->capture_default_str();
  sv->add_option("--exponent", exponent, "Exponent bound")->capture_default_str();
  sv->add_option("--n-lo", n_lo)->capture_default_str();
  sv->add_option("--n-hi", n_hi)->capture_default_str();
  on(sv, [&] {
    auto r = stability_result(verify_wn_lemma(load_schedule(g), parts, exponent, n_lo, n_hi).checks);
    r.report["schedule"] = load_schedule(g).str();
    return r;
  });
  auto* sst = skew->add_subcommand("stabilize", "(1-w^i w*^i)(1-w*^j w^j) = 0");
  sst->add_option("--i", si)->capture_default_str();
  sst->add_option("--j", sj)->capture_default_str();
  sst->add_option("--n-lo", n_lo)->capture_default_str();
  sst->add_option("--n-hi", n_hi)->capture_default_str();
  on(sst, [&] { return stability_result({verify_stabilization(load_schedule(g), si, sj, n_lo, n_hi)}); });
  auto* sc = skew->add_subcommand("corner", "Corner support of a recipe such as \"w inv(1+x) P w*\"");
  sc->add_option("recipe", recipe)->required();
  sc->add_option("--n-lo", n_lo)->capture_default_str();
  sc->add_option("--n-hi", n_hi)->capture_default_str();
  on(sc, [&] {
    auto c = corner_support_probe(load_schedule(g), parse_recipe(recipe), std::max(n_lo, 2L), n_hi);
    auto r = stability_result({c.check});
    r.report["ideal"] = std::string(1, c.ideal);
    return r;
  });
  auto* stau = skew->add_subcommand("tau", "Rank identities behind tau");
  stau->add_option("--n", tau_n)->capture_default_str();
  on(stau, [&] {
    auto t = tau_rank_identities(load_schedule(g), tau_n, g.T);
    Result r;
    r.ok = t.ok();
    r.report["K"] = t.K;
    for (const auto& c : t.checks) {
      r.report["checks"].push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
      r.text += std::string(c.holds ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
    }
    r.report["ok"] = r.ok;
    return r;
  });

  // lamplighter
  auto* lamp = app.add_subcommand("lamplighter", "The embedding s -> e_0 t");
  lamp->require_subcommand(1);
  long bound = 6;
  auto* ltr = lamp->add_subcommand("trace", "Trace of the image of an element of A");
  ltr->add_option("expr", expr)->required();
  on(ltr, [&] {
    auto img = embed_A(to_algebra_elem(parse_expression(expr)));
    Result res;
    res.report["image"] = img.str();
    res.report["trace"] = trace(img).str();
    res.text = trace(img).str();
    return res;
  });
  auto* lver = lamp->add_subcommand("verify", "Embedding identities and trace table");
  lver->add_option("--bound", bound)->capture_default_str();
  on(lver, [&] {
    auto rep = verify_embedding_suite(bound, g.T);
    Result res;
    res.ok = rep.ok();
    for (const auto& c : rep.checks) {
      res.report["checks"].push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
      res.text += std::string(c.holds ? "PASS " : "FAIL ") + c.name + "\n";
    }
    res.report["ok"] = res.ok;
    return res;
  });

  // suite
  std::string suite_name;
  auto* suite = app.add_subcommand("suite", "Run a named verification suite");
  suite->add_option("name", suite_name, "Suite name")->check(CLI::IsMember(suite_names()));
  suite->add_option("--suite", suite_name, "Suite name")->check(CLI::IsMember(suite_names()));
  on(suite, [&] {
    if (suite_name.empty()) throw CLI::ValidationError("suite", "a suite name is required");
    SuiteOptions o;
    o.T = g.T;
    o.period_bound = g.period_bound;
    if (!g.schedule_file.empty()) o.schedule = load_schedule(g);
    auto rep = run_suite(suite_name, o);
    Result res;
    res.ok = rep.ok();
    res.report = json::parse(rep.to_json());
    for (const auto& c : rep.checks)
      res.text += std::string(c.holds ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
    res.text += "suite " + suite_name + (rep.ok() ? " passed" : " FAILED") + "\n";
    return res;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    Result r = action();
    r.report["command"] = command;
    emit(g, command, r);
    return r.ok ? kPass : kFail;
  } catch (const ResourceBoundExceeded& e) {
    return fail_with(g, kResource, "resource_bound_exceeded", e.what());
  } catch (const PeriodBoundExceeded& e) {
    return fail_with(g, kResource, "period_bound_exceeded", e.what());
  } catch (const CLI::Error& e) {
    return fail_with(g, kUsage, "usage", e.what());
  } catch (const std::invalid_argument& e) {
    return fail_with(g, kUsage, "invalid_input", e.what());
  } catch (const std::out_of_range& e) {
    return fail_with(g, kUsage, "out_of_range", e.what());
  } catch (const std::exception& e) {
    return fail_with(g, kFail, "error", e.what());
  }
}
