// bruhat_cli.cpp
// Command-line frontend: info, poly, matchings, iso, verify.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bruhat/coxeter.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/group_ball.hpp"
#include "bruhat/kl.hpp"
#include "bruhat/matching.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/serialize.hpp"
#include "bruhat/verify.hpp"

namespace {

using namespace bruhat;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kVerifyFailed = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string matrix_path;
  int max_length = 0;
  bool allow_large = false;
  std::string format = "json";
  std::string cache_path;
  unsigned jobs = 1;
  bool timings = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at ? at - 1 : 0), '\n');
    throw InvalidInput(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

CoxeterMatrix load_matrix(const Config& c) {
  if (c.matrix_path.empty()) throw UsageError("--matrix is required");
  const json j = read_json(c.matrix_path);
  try {
    return CoxeterMatrix::from_json(j);
  } catch (const InvalidInput& e) {
    throw InvalidInput(c.matrix_path + ": " + e.what());
  }
}

int bound_for(const Config& c, const CoxeterMatrix& m) {
  const int L = c.max_length > 0 ? c.max_length : default_bound(m);
  if (c.max_length < 0) throw UsageError("--max-length must be >= 1");
  if (L > 12 && !c.allow_large) throw UsageError("--max-length above 12 needs --allow-large");
  return L;
}

std::string cache_path(const Config& c) {
  if (const char* env = std::getenv("BRUHAT_CACHE"); env && *env) return env;
  return c.cache_path;
}

void emit(const Config& c, const json& j, const std::string& text) {
  if (c.format == "text") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

json words(const GroupBall& b, const std::vector<ElemId>& xs) {
  json out = json::array();
  for (ElemId x : xs) out.push_back(b.format(x));
  return out;
}

std::string join(const json& arr) {
  std::string s;
  for (const auto& x : arr) s += (s.empty() ? "" : " ") + (x.is_string() ? x.get<std::string>() : x.dump());
  return s;
}

// ---------------------------------------------------------------- info

int cmd_info(const Config& c) {
  const CoxeterMatrix m = load_matrix(c);
  BallPtr ball = GroupBall::build(m, bound_for(c, m));
  const GroupBall& b = *ball;
  std::vector<ElemId> full;
  for (ElemId w = 0; w < b.size(); ++w)
    if (is_full(b, w, GeneratorSet::all(m.rank()))) full.push_back(w);
  json sizes = b.level_sizes();
  json j{{"rank", m.rank()},     {"matrix", m.to_json()},  {"bound", b.bound()},
         {"complete", b.complete()}, {"size", b.size()}, {"level_sizes", sizes},
         {"full_elements", words(b, full)}};
  std::ostringstream t;
  t << "rank " << m.rank() << "\n";
  for (Generator s : m.generators())
    for (Generator u : m.generators())
      if (s.index < u.index)
        t << "m(" << m.name(s) << "," << m.name(u) << ") = " << (m.finite(s, u) ? std::to_string(m.m(s, u)) : "inf")
          << "\n";
  t << "bound " << b.bound() << (b.complete() ? " (whole group)" : "") << ", " << b.size() << " elements\n";
  t << "sizes " << join(sizes) << "\n";
  t << "full elements " << full.size() << (full.empty() ? "" : ": " + join(j["full_elements"])) << "\n";
  emit(c, j, t.str());
  return kOk;
}

// ---------------------------------------------------------------- poly

int cmd_poly(const Config& c, const std::string& kind, const std::string& xs, const std::string& ys) {
  const CoxeterMatrix m = load_matrix(c);
  BallPtr ball = GroupBall::build(m, bound_for(c, m));
  const ElemId x = ball->parse(xs), y = ball->parse(ys);
  PolyContext pc(ball);
  const std::string path = cache_path(c);
  if (!path.empty() && std::filesystem::exists(path)) {
    bool loaded = false;
    try {
      loaded = pc.import_cache(read_json(path));
    } catch (const Error&) {
    }
    if (!loaded) std::cerr << "bruhat: cache " << path << " does not match, recomputing\n";
  }
  const IntPoly p = kind == "r" ? pc.r(x, y) : pc.kl(x, y);
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write cache " + path);
    out << pc.export_cache().dump() << '\n';
  }
  json j{{"kind", kind}, {"x", ball->format(x)}, {"y", ball->format(y)}, {"coefficients", p.to_json()}};
  emit(c, j, (kind == "r" ? "R" : "P") + std::string("(") + ball->format(x) + ", " + ball->format(y) +
                 ") = " + p.to_string());
  return kOk;
}

// ---------------------------------------------------------------- matchings

Generator base_of(const CoxeterMatrix& m, const std::string& name) {
  return name.empty() ? Generator(0) : m.generator(name);
}

MatchingFamily family_of(const CoxeterMatrix& m, Generator a, int L, const std::string& spec) {
  if (spec == "rho" || spec.empty()) return multiplication_family(m, a, L, Side::Right);
  if (spec == "lambda") return multiplication_family(m, a, L, Side::Left);
  if (spec.rfind("index:", 0) == 0) {
    std::size_t i = 0;
    try {
      i = std::stoull(spec.substr(6));
    } catch (const std::exception&) {
      throw UsageError("bad family index in " + spec);
    }
    const std::size_t n = count_families(m, a, L);
    if (i >= n) throw UsageError("family index " + std::to_string(i) + " out of range (" + std::to_string(n) + ")");
    return family_at(m, a, L, i);
  }
  json j = read_json(spec);
  if (!j.contains("base")) j["base"] = m.name(a);
  return family_from_json(m, j, L);
}

int cmd_matchings_list(const Config& c, const std::string& base) {
  const CoxeterMatrix m = load_matrix(c);
  const int L = bound_for(c, m);
  const Generator a = base_of(m, base);
  json arr = json::array();
  std::ostringstream t;
  const std::size_t n = count_families(m, a, L);
  for (std::size_t i = 0; i < n; ++i) {
    const json f = family_to_json(m, family_at(m, a, L, i));
    arr.push_back({{"index", i}, {"base", m.name(a)}, {"family", f}});
    t << i << " " << f.dump() << "\n";
  }
  emit(c, arr, t.str());
  return kOk;
}

std::string matching_text(const PartialMatching& phi) {
  const GroupBall& b = phi.ball();
  std::ostringstream t;
  t << "base " << b.matrix().name(phi.base()) << ", reliable bound " << phi.reliable_bound() << "\n";
  for (ElemId x : phi.lifted()) t << "  " << b.format(x) << " <-> " << b.format(phi.partner(x)) << "\n";
  t << "excluded " << join(words(b, phi.excluded())) << "\n";
  t << "unresolved " << phi.unresolved().size() << "\n";
  return t.str();
}

int cmd_matchings_extend(const Config& c, const std::string& base, const std::string& spec) {
  const CoxeterMatrix m = load_matrix(c);
  const int L = bound_for(c, m);
  BallPtr ball = GroupBall::build(m, L);
  const PartialMatching phi = extend_maximal(family_of(m, base_of(m, base), L, spec), ball);
  emit(c, matching_to_json(phi), matching_text(phi));
  return kOk;
}

int cmd_matchings_check(const Config& c, const std::string& base, const std::string& spec, const std::string& file) {
  const CoxeterMatrix m = load_matrix(c);
  const int L = bound_for(c, m);
  BallPtr ball = GroupBall::build(m, L);
  MatchingCheck r;
  if (!file.empty()) {
    const CandidateMap cand = candidate_from_json(*ball, read_json(file));
    r = is_special_matching(*ball, cand.map, cand.over);
  } else {
    r = is_special_matching(extend_maximal(family_of(m, base_of(m, base), L, spec), ball));
  }
  const json j = check_to_json(*ball, r);
  std::string text = r.ok ? "ok" : "violation";
  if (!r.ok) {
    text += r.clause ? " of clause " + std::to_string(r.clause) : std::string(" of the domain");
    if (r.element != kNone) text += " at " + ball->format(r.element);
    text += ": " + r.message;
  }
  emit(c, j, text);
  return r.ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- iso

int cmd_iso(const Config& c, const std::string& matrix2, const std::string& v1s, const std::string& v2s,
            bool polys) {
  const CoxeterMatrix m1 = load_matrix(c);
  Config c2 = c;
  if (!matrix2.empty()) c2.matrix_path = matrix2;
  const CoxeterMatrix m2 = load_matrix(c2);
  const Word w1 = m1.parse(v1s), w2 = m2.parse(v2s);
  BallPtr b1 = GroupBall::build(m1, std::max<int>(1, reduce(m1, w1).len()));
  BallPtr b2 = GroupBall::build(m2, std::max<int>(1, reduce(m2, w2).len()));
  const ElemId v1 = b1->id(w1), v2 = b2->id(w2);
  const GradedPoset p1 = interval(*b1, b1->identity(), v1), p2 = interval(*b2, b2->identity(), v2);
  const std::optional<NodeMap> f = poset_isomorphism(p1, p2);
  json j{{"v1", b1->format(v1)}, {"v2", b2->format(v2)}, {"sizes", {p1.size(), p2.size()}},
         {"isomorphic", f.has_value()}};
  std::ostringstream t;
  t << "[e," << b1->format(v1) << "] (" << p1.size() << ") vs [e," << b2->format(v2) << "] (" << p2.size()
    << "): " << (f ? "isomorphic" : "not isomorphic") << "\n";
  bool ok = true;
  if (f) {
    json map = json::array();
    for (std::size_t i = 0; i < p1.size(); ++i) {
      map.push_back({p1.labels[i], p2.labels[(*f)[i]]});
      t << "  " << p1.labels[i] << " -> " << p2.labels[(*f)[i]] << "\n";
    }
    j["map"] = map;
    if (polys) {
      PolyContext c1(b1), c2p(b2);
      for (std::size_t x = 0; x < p1.size() && ok; ++x)
        for (std::size_t y = 0; y < p1.size() && ok; ++y) {
          const ElemId ex = p1.elements[x], ey = p1.elements[y];
          if (!b1->leq(ex, ey)) continue;
          const ElemId fx = p2.elements[(*f)[x]], fy = p2.elements[(*f)[y]];
          ok = c1.r(ex, ey) == c2p.r(fx, fy) && c1.kl(ex, ey) == c2p.kl(fx, fy);
        }
      j["polynomials_agree"] = ok;
      t << "R and P " << (ok ? "agree" : "DIFFER") << " along the map\n";
    }
  }
  emit(c, j, t.str());
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Config& c, std::vector<std::string> suites, const std::string& corpus_path) {
  const auto& known = suite_names();
  if (suites.empty()) suites = known;
  for (const std::string& s : suites)
    if (std::find(known.begin(), known.end(), s) == known.end()) throw UsageError("unknown suite \"" + s + "\"");
  std::optional<Corpus> corpus;
  if (!corpus_path.empty()) corpus = Corpus::from_json(read_json(corpus_path));
  json reports = json::array();
  std::string text;
  bool pass = true, budget = false;
  for (const std::string& s : suites) {
    const SuiteReport r = run_suite(s, corpus ? *corpus : default_corpus(s), VerifyOptions{c.jobs});
    pass = pass && r.pass();
    budget = budget || r.budget_exceeded;
    reports.push_back(r.to_json(c.timings));
    text += r.to_text(c.timings);
  }
  emit(c, json{{"pass", pass}, {"suites", reports}}, text);
  if (budget) return kBudget;
  return pass ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bruhat order, R- and KL polynomials, special matchings"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--matrix", cfg.matrix_path, "Coxeter matrix JSON file");
  app.add_option("--max-length", cfg.max_length, "ball bound L (default: max finite m + 2, at most 12)");
  app.add_flag("--allow-large", cfg.allow_large, "permit --max-length above 12");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache", cfg.cache_path, "polynomial cache file (BRUHAT_CACHE overrides)");
  app.add_option("--jobs", cfg.jobs, "worker threads for verify")->check(CLI::Range(1u, 256u));
  app.add_flag("--timings", cfg.timings, "include per-case timings in verify reports");
  app.fallthrough();

  auto* info = app.add_subcommand("info", "rank, bonds, ball sizes per length, full elements");

  auto* poly = app.add_subcommand("poly", "R or KL polynomial of a pair");
  std::string kind, x, y;
  poly->add_option("kind", kind, "r or kl")->required()->check(CLI::IsMember({"r", "kl"}));
  poly->add_option("x", x, "word, e.g. s0.s1")->required();
  poly->add_option("y", y, "word")->required();

  auto* match = app.add_subcommand("matchings", "enumerate, extend or check special matchings");
  match->require_subcommand(1);
  std::string base, family, candidate;
  auto* list = match->add_subcommand("list", "families of principal dihedral matchings");
  auto* extend = match->add_subcommand("extend", "maximal extension of a family");
  auto* check = match->add_subcommand("check", "check the special-matching axioms");
  for (auto* sub : {list, extend, check}) sub->add_option("--base", base, "generator a = φ(e) (default: first)");
  for (auto* sub : {extend, check})
    sub->add_option("--family", family, "rho | lambda | index:N | FILE");
  check->add_option("--candidate", candidate, "JSON {\"pairs\": [[x, y], ...]} to check instead");

  auto* iso = app.add_subcommand("iso", "poset isomorphism of lower intervals [e,v1] and [e,v2]");
  std::string matrix2, v1, v2;
  bool polys = false;
  iso->add_option("v1", v1)->required();
  iso->add_option("v2", v2)->required();
  iso->add_option("--matrix2", matrix2, "matrix for v2 (default: --matrix)");
  iso->add_flag("--polys", polys, "also compare R and P along the isomorphism");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  std::string corpus;
  verify->add_option("suites", suites, "suite names (default: all)");
  verify->add_option("--corpus", corpus, "corpus JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return cmd_info(cfg);
    if (*poly) return cmd_poly(cfg, kind, x, y);
    if (*list) return cmd_matchings_list(cfg, base);
    if (*extend) return cmd_matchings_extend(cfg, base, family);
    if (*check) return cmd_matchings_check(cfg, base, family, candidate);
    if (*iso) return cmd_iso(cfg, matrix2, v1, v2, polys);
    if (*verify) return cmd_verify(cfg, suites, corpus);
  } catch (const UsageError& e) {
    std::cerr << "bruhat: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "bruhat: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "bruhat: invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "bruhat: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
