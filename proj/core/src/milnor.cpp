#include "commcalc/milnor.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

#include "commcalc/errors.hpp"
#include "commcalc/limits.hpp"
#include "commcalc/nilpotent.hpp"

namespace commcalc {

namespace {

std::shared_ptr<const NilpotentContext> sharedContext(int m, int q, HallOrder order) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, HallOrder>, std::shared_ptr<const NilpotentContext>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{m, q, order}];
  if (!slot) slot = std::make_shared<const NilpotentContext>(m, q, order);
  return slot;
}

void checkIndex(const LinkPresentation& lp, const MultiIndex& idx) {
  for (int v : idx)
    if (v < 1 || v > lp.m()) throw RankError("multi-index entry " + std::to_string(v) + " outside 1.." + std::to_string(lp.m()));
}

std::vector<int> occurrences(const MultiIndex& idx, int m) {
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  for (int v : idx) ++counts[static_cast<std::size_t>(v - 1)];
  return counts;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int parseCount(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + text + "'");
  }
}

}  // namespace

std::string toString(DeltaMode mode) { return mode == DeltaMode::Ordered ? "ordered" : "milnor"; }

DeltaMode parseDeltaMode(std::string_view text) {
  if (text == "ordered") return DeltaMode::Ordered;
  if (text == "milnor") return DeltaMode::Milnor;
  throw ParseError("unknown delta mode '" + std::string(text) + "'");
}

LinkPresentation::LinkPresentation(int m, int q, std::vector<Word> longitudes)
    : m_(m), q_(q), longitudes_(std::move(longitudes)) {
  if (m < 1) throw DomainError("a presentation needs at least one component");
  if (q < 2) throw DomainError("q must be at least 2");
  if (static_cast<int>(longitudes_.size()) != m)
    throw DomainError("expected " + std::to_string(m) + " longitudes, got " + std::to_string(longitudes_.size()));
  for (const auto& l : longitudes_) {
    if (l.rank() != m) throw RankError("longitude rank differs from the component count");
    expansions_.push_back(expand(l, q));
  }
}

LinkPresentation parsePresentation(std::string_view text) {
  std::optional<int> m;
  std::optional<int> q;
  std::vector<std::pair<int, std::string>> raw;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineNo) + ": expected key=value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "m") {
      m = parseCount(value, lineNo);
    } else if (key == "q") {
      q = parseCount(value, lineNo);
    } else if (key.size() > 1 && key[0] == 'l') {
      raw.emplace_back(parseCount(key.substr(1), lineNo), value);
    } else {
      throw ParseError("line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
    }
  }
  if (!m) throw ParseError("missing m=");
  if (!q) throw ParseError("missing q=");
  if (*m < 1) throw DomainError("m must be positive");
  std::vector<std::optional<Word>> slots(static_cast<std::size_t>(*m));
  for (const auto& [i, expr] : raw) {
    if (i < 1 || i > *m) throw RankError("longitude l" + std::to_string(i) + " outside 1.." + std::to_string(*m));
    auto& slot = slots[static_cast<std::size_t>(i - 1)];
    if (slot) throw ParseError("longitude l" + std::to_string(i) + " given twice");
    slot = parseWord(expr, *m);
  }
  std::vector<Word> longitudes;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ParseError("missing longitude l" + std::to_string(i + 1));
    longitudes.push_back(*slots[i]);
  }
  return LinkPresentation(*m, *q, std::move(longitudes));
}

LinkPresentation loadPresentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parsePresentation(buffer.str());
}

Integer reduceResidue(const Integer& x, const Integer& modulus) {
  if (modulus == 0) return x;
  Integer r = x % modulus;
  if (r < 0) r += modulus;
  return r;
}

Integer rawMu(const LinkPresentation& lp, const MultiIndex& idx) {
  if (idx.size() < 2) throw DomainError("a mu-bar index has length at least 2");
  if (static_cast<int>(idx.size()) > lp.q() - 1)
    throw DomainError("index length " + std::to_string(idx.size()) + " needs q > " + std::to_string(idx.size()));
  checkIndex(lp, idx);
  const Monomial mono(idx.begin(), idx.end() - 1);
  return lp.expansion(idx.back()).coefficient(mono);
}

Integer muModulus(const LinkPresentation& lp, const MultiIndex& idx, DeltaMode mode) {
  if (idx.size() < 2) throw DomainError("a mu-bar index has length at least 2");
  checkIndex(lp, idx);
  const std::size_t len = idx.size();
  std::set<MultiIndex> seen;
  Integer g = 0;
  for (unsigned long mask = 1; mask + 1 < (1UL << len); ++mask) {
    MultiIndex sub;
    for (std::size_t b = 0; b < len; ++b)
      if (mask & (1UL << b)) sub.push_back(idx[b]);
    if (sub.size() < 2) continue;
    const std::size_t rotations = mode == DeltaMode::Milnor ? sub.size() : 1;
    for (std::size_t r = 0; r < rotations; ++r) {
      MultiIndex rot(sub.begin() + static_cast<long>(r), sub.end());
      rot.insert(rot.end(), sub.begin(), sub.begin() + static_cast<long>(r));
      if (!seen.insert(rot).second) continue;
      g = gcd(g, abs(rawMu(lp, rot)));
    }
  }
  return g;
}

MuValue mu(const LinkPresentation& lp, const MultiIndex& idx, DeltaMode mode) {
  MuValue v;
  v.index = idx;
  v.rawMu = rawMu(lp, idx);
  v.modulus = muModulus(lp, idx, mode);
  v.residue = reduceResidue(v.rawMu, v.modulus);
  return v;
}

std::vector<MultiIndex> multiIndices(int m, int length) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(length), 1);
  while (true) {
    out.push_back(cur);
    int pos = length - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == m) cur[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
  }
  return out;
}

std::map<int, Integer> commutatorNumbers(const LinkPresentation& lp, const MultiIndex& multiset, int i, HallOrder order) {
  if (multiset.empty()) throw DomainError("the multiset I must be nonempty");
  checkIndex(lp, multiset);
  checkIndex(lp, {i});
  const int n = static_cast<int>(multiset.size());
  auto ctx = sharedContext(lp.m(), n + 1, order);
  const ExponentVector e = ctx->normalForm(lp.longitude(i));
  const auto target = occurrences(multiset, lp.m());
  std::map<int, Integer> out;
  auto [first, last] = ctx->basis().stratum(n);
  for (int c = first; c < last; ++c)
    if (ctx->basis()[static_cast<std::size_t>(c)].multidegree == target) out[c] = e[static_cast<std::size_t>(c)];
  return out;
}

std::map<MultiIndex, Integer> muFromE(const LinkPresentation& lp, const MultiIndex& multiset, int i, HallOrder order,
                                      DeltaMode mode) {
  const auto numbers = commutatorNumbers(lp, multiset, i, order);
  const int n = static_cast<int>(multiset.size());
  auto ctx = sharedContext(lp.m(), n + 1, order);
  std::vector<Integer> combo;
  for (const auto& [c, value] : numbers) {
    const auto& r = ctx->basis().rho(c);
    if (combo.empty()) combo.assign(r.size(), Integer(0));
    for (std::size_t t = 0; t < r.size(); ++t) combo[t] += value * r[t];
  }
  std::map<MultiIndex, Integer> out;
  MultiIndex sigma = multiset;
  std::sort(sigma.begin(), sigma.end());
  do {
    Integer coeff = combo.empty() ? Integer(0) : combo[TruncatedSeries::indexOf(lp.m(), sigma)];
    MultiIndex full = sigma;
    full.push_back(i);
    out[sigma] = reduceResidue(coeff, muModulus(lp, full, mode));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::optional<std::map<int, Integer>> eFromMu(const LinkPresentation& lp, const MultiIndex& multiset, int i,
                                              HallOrder order, DeltaMode mode) {
  if (multiset.empty()) throw DomainError("the multiset I must be nonempty");
  checkIndex(lp, multiset);
  const int n = static_cast<int>(multiset.size());
  auto ctx = sharedContext(lp.m(), n + 1, order);
  std::vector<Integer> part(ctx->basis().rho(ctx->basis().stratum(n).first).size(), Integer(0));
  MultiIndex sigma = multiset;
  std::sort(sigma.begin(), sigma.end());
  do {
    MultiIndex full = sigma;
    full.push_back(i);
    const MuValue v = mu(lp, full, mode);
    if (v.modulus != 0) return std::nullopt;
    part[TruncatedSeries::indexOf(lp.m(), sigma)] = v.rawMu;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  auto coords = ctx->solveWeight(n, part);
  if (!coords) throw InternalError("mu-bar values are not an integral Lie combination");
  const auto target = occurrences(multiset, lp.m());
  const int first = ctx->basis().stratum(n).first;
  std::map<int, Integer> out;
  for (std::size_t t = 0; t < coords->size(); ++t) {
    const int c = first + static_cast<int>(t);
    if (ctx->basis()[static_cast<std::size_t>(c)].multidegree == target) out[c] = (*coords)[t];
  }
  return out;
}

StarReport checkRelationsStar(const LinkPresentation& lp, int n, HallOrder order) {
  if (n < 1) throw DomainError("relations (*) need n >= 1");
  if (lp.q() < n + 2) throw DomainError("relations (*) at n = " + std::to_string(n) + " need q >= " + std::to_string(n + 2));
  for (int len = 2; len <= n; ++len)
    for (const auto& idx : multiIndices(lp.m(), len))
      if (mu(lp, idx).residue != 0)
        throw DomainError("mu-bar(" + formatMultiIndex(idx) + ") does not vanish");
  auto ctx = sharedContext(lp.m(), n + 2, order);
  const auto& basis = ctx->basis();
  const auto [kFirst, kLast] = basis.stratum(n + 1);
  const auto [jFirst, jLast] = basis.stratum(n);
  std::vector<Integer> sums(static_cast<std::size_t>(kLast - kFirst), Integer(0));
  for (int j = 1; j <= lp.m(); ++j) {
    const ExponentVector lj = ctx->normalForm(lp.longitude(j));
    const Word mj = Word::generator(lp.m(), j);
    for (int c = jFirst; c < jLast; ++c) {
      const Integer& e = lj[static_cast<std::size_t>(c)];
      if (e == 0) continue;
      const ExponentVector bracket = ctx->normalForm(commutator(mj, basis.asWord(c)));
      for (int kd = kFirst; kd < kLast; ++kd)
        sums[static_cast<std::size_t>(kd - kFirst)] += bracket[static_cast<std::size_t>(kd)] * e;
    }
  }
  StarReport report;
  report.n = n;
  for (int kd = kFirst; kd < kLast; ++kd) {
    const Integer& s = sums[static_cast<std::size_t>(kd - kFirst)];
    report.entries.push_back({kd, basis.format(kd), s});
    if (s != 0) report.pass = false;
  }
  return report;
}

CyclicReport checkCyclicSymmetry(const LinkPresentation& lp, int length, DeltaMode mode) {
  if (length < 2) throw DomainError("cyclic symmetry needs length >= 2");
  CyclicReport report;
  report.length = length;
  report.mode = mode;
  report.starPass = checkRelationsStar(lp, length - 1).pass;
  for (const auto& idx : multiIndices(lp.m(), length)) {
    const MuValue base = mu(lp, idx, mode);
    for (int r = 1; r < length; ++r) {
      MultiIndex rot(idx.begin() + r, idx.end());
      rot.insert(rot.end(), idx.begin(), idx.begin() + r);
      const MuValue other = mu(lp, rot, mode);
      const Integer g = gcd(base.modulus, other.modulus);
      if (reduceResidue(base.rawMu - other.rawMu, g) != 0) {
        report.failures.push_back({idx, rot, base.residue, other.residue});
        report.pass = false;
      }
    }
  }
  return report;
}

Integer countIndependentMu(int m, int length) {
  if (length < 2) throw DomainError("mu-bar length must be at least 2");
  return m * wittCount(m, length - 1) - wittCount(m, length);
}

std::string toString(MuClass c) {
  switch (c) {
    case MuClass::Extractable: return "extractable";
    case MuClass::NotExtractable: return "notExtractable";
    case MuClass::InvariantOnly: return "invariantOnly";
    case MuClass::Outside: return "outside";
  }
  return "outside";
}

MuClass classifyMu(const MultiIndex& idx, int k) {
  if (k < 1) throw DomainError("classification requires k >= 1");
  if (idx.size() < 2) throw DomainError("a mu-bar index has length at least 2");
  const int m = *std::max_element(idx.begin(), idx.end());
  if (*std::min_element(idx.begin(), idx.end()) < 1) throw RankError("multi-index entries are 1-based");
  const auto counts = occurrences(idx, m);
  const int over = static_cast<int>(std::count_if(counts.begin(), counts.end(), [k](int c) { return c > k + 1; }));
  const int top = *std::max_element(counts.begin(), counts.end());
  if (over == 0 || (over == 1 && top == k + 2)) return MuClass::Extractable;
  const int heavy = static_cast<int>(std::count_if(counts.begin(), counts.end(), [k](int c) { return c >= k + 2; }));
  if (top >= k + 3 || heavy >= 2) {
    if (static_cast<int>(idx.size()) <= 2 * k + 3) return MuClass::InvariantOnly;
    return MuClass::NotExtractable;
  }
  return MuClass::Outside;
}

MultiIndex parseMultiIndex(std::string_view text) {
  MultiIndex out;
  const bool separated = text.find(',') != std::string_view::npos;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char ch = text[pos];
    if (ch == ',' || ch == ' ') {
      ++pos;
      continue;
    }
    if (ch < '0' || ch > '9') throw ParseError("expected a digit", pos);
    int v = 0;
    if (separated) {
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') v = v * 10 + (text[pos++] - '0');
    } else {
      v = ch - '0';
      ++pos;
    }
    if (v < 1) throw ParseError("multi-index entries are 1-based", pos - 1);
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty multi-index");
  return out;
}

std::string formatMultiIndex(const MultiIndex& idx) {
  const bool wide = std::any_of(idx.begin(), idx.end(), [](int v) { return v > 9; });
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(idx[i]);
  }
  return out;
}

std::string GkPresentation::text() const {
  std::ostringstream out;
  out << "# G_k presentation, m=" << m << " k=" << k << "\n";
  out << "generators:";
  for (int i = 1; i <= m; ++i) out << (i == 1 ? " " : ",") << generatorName(m, i);
  out << "\n";
  for (const auto& w : peripheral) out << "peripheral " << format(w) << "\n";
  for (const auto& c : cRelators) out << "c " << c << "\n";
  for (const auto& d : dRelators) out << "d " << d << "\n";
  return out.str();
}

GkPresentation emitGkPresentation(const LinkPresentation& lp, int k) {
  if (k < 0) throw DomainError("k must be nonnegative");
  const int m = lp.m();
  const int top = m * (k + 1);
  if (lp.q() <= top)
    throw DomainError("emitting G_k needs q > " + std::to_string(top) + ", got q = " + std::to_string(lp.q()));
  GkPresentation g;
  g.m = m;
  g.k = k;
  for (int i = 1; i <= m; ++i) g.peripheral.push_back(commutator(Word::generator(m, i), lp.longitude(i)));
  if (top >= 2) {
    HallBasis basis(m, top, HallOrder::Standard, defaultLimits().maxBasisSize);
    for (const auto& c : basis.elements()) {
      if (c.weight < 2) continue;
      if (*std::max_element(c.multidegree.begin(), c.multidegree.end()) < k + 2) continue;
      g.cRelators.push_back(basis.format(c.ordinal));
      g.cWords.push_back(basis.asWord(c.ordinal));
    }
  }
  const int len = top + 1;
  const auto tuples = multiIndices(m, len);
  if (tuples.size() > defaultLimits().maxInstantiatedWords)
    throw ResourceError("too many left-normed relators of weight " + std::to_string(len));
  for (const auto& t : tuples) {
    if (t[0] == t[1]) continue;
    std::vector<Word> entries;
    std::string name = "[";
    for (std::size_t s = 0; s < t.size(); ++s) {
      entries.push_back(Word::generator(m, t[s]));
      name += (s ? "," : "") + generatorName(m, t[s]);
    }
    g.dRelators.push_back(name + "]");
    g.dWords.push_back(leftNormed(entries));
  }
  return g;
}

}  // namespace commcalc
