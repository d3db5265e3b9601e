#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "commcalc/errors.hpp"
#include "commcalc/hall.hpp"
#include "commcalc/milnor.hpp"
#include "commcalc/nilpotent.hpp"
#include "commcalc/sato_levine.hpp"
#include "commcalc/subgroups.hpp"
#include "verify.hpp"

namespace commcalc::cli {

using commcalc::toString;

namespace {

HallOrder parseOrder(const std::string& text) {
  if (text == "standard") return HallOrder::Standard;
  if (text == "reversed") return HallOrder::Reversed;
  throw ParseError("unknown Hall order '" + text + "'");
}

std::string joinInts(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<int> parseIntList(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  return out;
}

void printMatrix(std::ostream& out, const IntMatrix& rows, const std::string& indent) {
  if (rows.empty()) {
    out << indent << "(empty)\n";
    return;
  }
  for (const auto& row : rows) {
    out << indent;
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << "\n";
  }
}

struct HallArgs {
  int gens = 2;
  int maxWeight = 3;
  std::string multidegree;
  std::string order = "standard";
};

int runHall(const HallArgs& a, std::ostream& out) {
  HallBasis basis(a.gens, a.maxWeight, parseOrder(a.order), defaultLimits().maxBasisSize);
  std::optional<std::vector<int>> filter;
  if (!a.multidegree.empty()) {
    filter = parseIntList(a.multidegree);
    if (static_cast<int>(filter->size()) != a.gens) throw DomainError("multidegree needs one entry per generator");
  }
  for (const auto& c : basis.elements()) {
    if (filter && c.multidegree != *filter) continue;
    out << c.ordinal << " " << c.weight << " (" << joinInts(c.multidegree) << ") " << basis.format(c.ordinal) << "\n";
  }
  return 0;
}

struct NfArgs {
  int gens = 2;
  int q = 4;
  std::string word;
  std::string order = "standard";
};

int runNf(const NfArgs& a, std::ostream& out) {
  NilpotentContext ctx(a.gens, a.q, parseOrder(a.order));
  const auto e = ctx.normalForm(parseWord(a.word, a.gens));
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& c = ctx.basis()[i];
    out << c.ordinal << " " << c.weight << " " << ctx.basis().format(c.ordinal) << " " << e[i] << "\n";
  }
  return 0;
}

struct SubgroupArgs {
  int gens = 2;
  int q = 4;
  std::string scheme;
  int length = 0;
  int conjDepth = 0;
  std::vector<std::string> contains;
  std::vector<int> sections;
  std::string compare;
};

int runSubgroup(const SubgroupArgs& a, std::ostream& out) {
  auto ctx = std::make_shared<const NilpotentContext>(a.gens, a.q);
  auto scheme = GeneratorScheme::parse(a.scheme);
  scheme.length = a.length;
  scheme.conjDepth = a.conjDepth;
  auto built = buildStable(scheme, ctx);
  const auto& lat = built.lattice;
  out << "scheme " << scheme.name() << " m=" << a.gens << " q=" << a.q << " L=" << built.length
      << " stable=" << (built.stable ? "yes" : "no") << "\n";
  out << "pivots:\n";
  for (const auto& [ordinal, p] : lat.pivots())
    out << "  " << ordinal << " " << p.weight << " " << p.lead << " " << ctx->basis().format(ordinal) << "\n";
  std::vector<int> sections = a.sections;
  if (sections.empty())
    for (int n = 1; n < a.q; ++n) sections.push_back(n);
  for (int n : sections) {
    if (n < 1 || n >= a.q) throw DomainError("section weight must lie in 1..q-1");
    out << "section " << n << " index " << lat.sectionIndex(n) << "\n";
    printMatrix(out, lat.sectionLattice(n), "  ");
  }
  for (const auto& w : a.contains)
    out << "contains " << w << ": " << (lat.contains(parseWord(w, a.gens)) ? "yes" : "no") << "\n";
  if (!a.compare.empty()) {
    auto other = GeneratorScheme::parse(a.compare);
    other.length = a.length;
    other.conjDepth = a.conjDepth;
    auto otherBuilt = buildStable(other, ctx);
    out << "compare " << scheme.name() << " vs " << other.name() << ": "
        << toString(compareLattices(lat, otherBuilt.lattice)) << " (stable=" << (otherBuilt.stable ? "yes" : "no")
        << ")\n";
  }
  return 0;
}

struct MuArgs {
  std::string file;
  std::string index;
  int allUpto = 0;
  std::string deltaMode = "ordered";
  std::string classify;
  int k = 1;
  int emitGk = -1;
  int star = 0;
  int cyclic = 0;
};

void printMu(std::ostream& out, const MuValue& v) {
  out << formatMultiIndex(v.index) << " raw " << v.rawMu << " delta " << v.modulus << " mu-bar " << v.residue << "\n";
}

int runMu(const MuArgs& a, std::ostream& out) {
  if (!a.classify.empty()) {
    const auto idx = parseMultiIndex(a.classify);
    out << formatMultiIndex(idx) << " k=" << a.k << " " << toString(classifyMu(idx, a.k)) << "\n";
    return 0;
  }
  if (a.file.empty()) throw DomainError("mu needs --file unless --classify is given");
  const auto lp = loadPresentation(a.file);
  const auto mode = parseDeltaMode(a.deltaMode);
  bool any = false;
  if (!a.index.empty()) {
    out << "delta-mode " << toString(mode) << "\n";
    printMu(out, mu(lp, parseMultiIndex(a.index), mode));
    any = true;
  }
  if (a.allUpto > 0) {
    out << "delta-mode " << toString(mode) << "\n";
    for (int len = 2; len <= a.allUpto; ++len)
      for (const auto& idx : multiIndices(lp.m(), len)) printMu(out, mu(lp, idx, mode));
    any = true;
  }
  if (a.star > 0) {
    const auto r = checkRelationsStar(lp, a.star);
    out << "relations (*) n=" << r.n << ": " << (r.pass ? "pass" : "fail") << "\n";
    for (const auto& e : r.entries) out << "  " << e.ordinal << " " << e.commutator << " " << e.sum << "\n";
    any = true;
  }
  if (a.cyclic > 0) {
    const auto r = checkCyclicSymmetry(lp, a.cyclic, mode);
    out << "cyclic symmetry length " << r.length << " (" << toString(mode) << "): " << (r.pass ? "pass" : "fail")
        << "; relations (*): " << (r.starPass ? "pass" : "fail") << "; equivalent: " << (r.equivalent() ? "yes" : "no")
        << "\n";
    for (const auto& f : r.failures)
      out << "  " << formatMultiIndex(f.index) << "=" << f.value << " vs " << formatMultiIndex(f.rotation) << "="
          << f.rotatedValue << "\n";
    any = true;
  }
  if (a.emitGk >= 0) {
    out << emitGkPresentation(lp, a.emitGk).text();
    any = true;
  }
  if (!any) throw DomainError("mu needs one of --index, --all-upto, --star, --cyclic, --emit-gk");
  return 0;
}

struct BetaArgs {
  std::string trace;
  std::string specialS;
};

void printVector(std::ostream& out, const std::vector<Rational>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << toString(v[i]);
}

int runBeta(const BetaArgs& a, std::ostream& out) {
  bool any = false;
  if (!a.trace.empty()) {
    const auto t = loadTrace(a.trace);
    out << "convention: row x carries p, column x carries q, lambda at (x,x)\n";
    if (t.m == 2) out << "beta-tilde " << toString(betaTilde(t)) << "\n";
    if (t.s) {
      out << "s = (";
      printVector(out, *t.s);
      out << ")\n";
      for (std::size_t r = 0; r < t.records.size(); ++r)
        out << "record " << r + 1 << " jump " << toString(t.records[r].sign * betaJump(*t.s, t.linking, t.records[r])) << "\n";
      out << "beta change " << toString(betaChange(t, *t.s)) << "\n";
      const auto cond = invarianceCondition(*t.s, t.linking);
      out << "minors vanish:";
      for (bool b : cond) out << " " << (b ? "yes" : "no");
      out << "\n";
    }
    any = true;
  }
  if (!a.specialS.empty()) {
    const auto v = parseIntList(a.specialS);
    if (v.size() != 3) throw DomainError("--special-s needs a12,a13,a23");
    const auto lk = linkingMatrix3(v[0], v[1], v[2]);
    for (int sign : {1, -1}) {
      const auto s = threeComponentSpecialS(lk, sign);
      out << (sign > 0 ? "+" : "-") << " s = (";
      printVector(out, s);
      const auto cond = invarianceCondition(s, lk);
      out << ") minors vanish: " << (std::all_of(cond.begin(), cond.end(), [](bool b) { return b; }) ? "yes" : "no")
          << " det A = " << toString(determinant(surgeryMatrix(s, lk))) << "\n";
    }
    any = true;
  }
  if (!any) throw DomainError("beta needs --trace or --special-s");
  return 0;
}

struct VerifyArgs {
  std::vector<std::string> only;
  std::string report;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> q;
  bool list = false;
};

int runVerifyCommand(const VerifyArgs& a, std::ostream& out) {
  if (a.list) {
    for (const auto& info : checkCatalog()) out << info.id << "  " << info.claim << "\n";
    return 0;
  }
  VerifyConfig config = a.config.empty() ? VerifyConfig{} : VerifyConfig::load(a.config);
  if (a.seed) config.seed = *a.seed;
  if (a.q) config.q = *a.q;
  if (!a.only.empty()) config.only = a.only;
  out << "seed " << config.seed << "\n";
  const auto report = runVerify(config, [&out](const CheckResult& r) {
    out << std::left << std::setw(9) << toString(r.verdict) << std::setw(22) << r.id << std::right << std::fixed
        << std::setprecision(2) << r.seconds << "s (limit " << r.limitSeconds << "s)";
    if (r.stable) out << " stable=" << (*r.stable ? "yes" : "no");
    out << "\n";
    if (r.verdict != Verdict::Pass)
      for (const auto& n : r.notes) out << "    " << n << "\n";
    out.flush();
  });
  if (!a.report.empty()) {
    std::ofstream file(a.report);
    if (!file) throw Error("cannot write " + a.report);
    nlohmann::json j = report.toJson();
    j["config"] = config.toJson();
    file << j.dump(2) << "\n";
  }
  return report.anyFail() ? 1 : 0;
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutator calculus in free and free nilpotent groups"};
  app.require_subcommand(1);

  HallArgs hall;
  auto* hallCmd = app.add_subcommand("hall", "List basic commutators");
  hallCmd->add_option("--gens", hall.gens, "Number of generators")->required()->check(CLI::PositiveNumber);
  hallCmd->add_option("--max-weight", hall.maxWeight, "Largest weight")->required()->check(CLI::PositiveNumber);
  hallCmd->add_option("--multidegree", hall.multidegree, "Only commutators with occurrence counts c1,...,cm");
  hallCmd->add_option("--order", hall.order, "standard or reversed");

  NfArgs nf;
  auto* nfCmd = app.add_subcommand("nf", "Normal form modulo gamma_q");
  nfCmd->add_option("--gens", nf.gens, "Number of generators")->required()->check(CLI::PositiveNumber);
  nfCmd->add_option("--q", nf.q, "Truncation")->required();
  nfCmd->add_option("--order", nf.order, "standard or reversed");
  nfCmd->add_option("word", nf.word, "Word expression")->required();

  SubgroupArgs sg;
  auto* sgCmd = app.add_subcommand("subgroup", "Close a generator scheme and print its lattice");
  sgCmd->add_option("--gens", sg.gens, "Number of generators")->required()->check(CLI::PositiveNumber);
  sgCmd->add_option("--q", sg.q, "Truncation")->required();
  sgCmd->add_option("--scheme", sg.scheme, "gamma:n|mu:k|mu27:k|mu28:k|delta:k|delta-conj:k|epsilon:n|nu:n|nk:k|derived2")
      ->required();
  sgCmd->add_option("--len", sg.length, "Substitution length (0 = default)");
  sgCmd->add_option("--conj-depth", sg.conjDepth, "Closure depth for mu schemes (0 = k+1)");
  sgCmd->add_option("--contains", sg.contains, "Membership query");
  sgCmd->add_option("--section", sg.sections, "Section weight to print");
  sgCmd->add_option("--compare", sg.compare, "Second scheme to compare against");

  MuArgs mu;
  auto* muCmd = app.add_subcommand("mu", "Milnor invariants of a presentation file");
  muCmd->add_option("--file", mu.file, "Presentation file");
  muCmd->add_option("--index", mu.index, "Multi-index such as 231");
  muCmd->add_option("--all-upto", mu.allUpto, "All multi-indices up to this length");
  muCmd->add_option("--delta-mode", mu.deltaMode, "ordered or milnor");
  muCmd->add_option("--classify", mu.classify, "Classify a multi-index");
  muCmd->add_option("--k", mu.k, "k for --classify");
  muCmd->add_option("--emit-gk", mu.emitGk, "Emit the G_k presentation");
  muCmd->add_option("--star", mu.star, "Check relations (*) at this n");
  muCmd->add_option("--cyclic", mu.cyclic, "Check cyclic symmetry at this length");

  BetaArgs beta;
  auto* betaCmd = app.add_subcommand("beta", "Sato-Levine type invariants");
  betaCmd->add_option("--trace", beta.trace, "Crossing-change trace file");
  betaCmd->add_option("--special-s", beta.specialS, "a12,a13,a23");

  VerifyArgs ver;
  auto* verCmd = app.add_subcommand("verify", "Run the verification suite");
  verCmd->add_option("--only", ver.only, "Run only these check ids");
  verCmd->add_option("--report", ver.report, "Write a JSON report");
  verCmd->add_option("--config", ver.config, "JSON configuration file");
  verCmd->add_option("--seed", ver.seed, "Random seed");
  verCmd->add_option("--q", ver.q, "Truncation override");
  verCmd->add_flag("--list", ver.list, "List check ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*hallCmd) return runHall(hall, out);
    if (*nfCmd) return runNf(nf, out);
    if (*sgCmd) return runSubgroup(sg, out);
    if (*muCmd) return runMu(mu, out);
    if (*betaCmd) return runBeta(beta, out);
    if (*verCmd) return runVerifyCommand(ver, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const RankError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"commcalc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return runCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace commcalc::cli
