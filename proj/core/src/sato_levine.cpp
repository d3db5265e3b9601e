#include "commcalc/sato_levine.hpp"

#include <fstream>
#include <sstream>

#include "commcalc/errors.hpp"

namespace commcalc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Integer parseInteger(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("expected an integer");
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) throw ParseError("expected an integer, got '" + t + "'");
  for (std::size_t j = i; j < t.size(); ++j)
    if (t[j] < '0' || t[j] > '9') throw ParseError("expected an integer, got '" + t + "'", j);
  return Integer(t[0] == '+' ? t.substr(1) : t);
}

std::vector<std::string> splitOn(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<Integer> parseIntegerList(std::string_view text) {
  std::vector<Integer> out;
  for (const auto& part : splitOn(text, ',')) out.push_back(parseInteger(part));
  return out;
}

void checkSquare(std::size_t m, const IntMatrix& linking) {
  if (linking.size() != m) throw DomainError("linking matrix has the wrong size");
  for (const auto& row : linking)
    if (row.size() != m) throw DomainError("linking matrix is not square");
}

}  // namespace

Rational parseRational(std::string_view text) {
  const auto parts = splitOn(text, '/');
  if (parts.size() > 2) throw ParseError("malformed rational '" + std::string(text) + "'");
  const Integer num = parseInteger(parts[0]);
  const Integer den = parts.size() == 2 ? parseInteger(parts[1]) : Integer(1);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num) / Rational(den);
}

void checkRecord(const IntMatrix& linking, const CrossingRecord& rec) {
  const std::size_t m = linking.size();
  if (rec.component < 1 || rec.component > static_cast<int>(m))
    throw RankError("crossing component " + std::to_string(rec.component) + " outside 1.." + std::to_string(m));
  if (rec.p.size() != m || rec.q.size() != m) throw DomainError("lobe vectors must have one entry per component");
  if (rec.sign != 1 && rec.sign != -1) throw DomainError("record sign must be +1 or -1");
  const auto x = static_cast<std::size_t>(rec.component - 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (i == x) continue;
    if (rec.p[i] + rec.q[i] != linking[x][i])
      throw DomainError("lobe linking numbers of component " + std::to_string(i + 1) + " do not add up to a_" +
                        std::to_string(x + 1) + std::to_string(i + 1));
  }
}

HomotopyTrace parseTrace(std::string_view text) {
  HomotopyTrace trace;
  std::optional<std::vector<Integer>> upper;
  std::vector<std::vector<std::string>> rawRecords;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::string where = "line " + std::to_string(lineNo) + ": ";
    try {
      if (const auto eq = body.find('='); eq != std::string::npos) {
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key == "m") {
          trace.m = static_cast<int>(parseInteger(value));
        } else if (key == "a") {
          upper = parseIntegerList(value);
        } else if (key == "base") {
          trace.baseValue = parseRational(value);
        } else if (key == "s") {
          std::vector<Rational> s;
          for (const auto& part : splitOn(value, ',')) s.push_back(parseRational(part));
          trace.s = s;
        } else {
          throw ParseError("unknown key '" + key + "'");
        }
        continue;
      }
      std::istringstream fields(body);
      std::vector<std::string> tokens;
      for (std::string t; fields >> t;) tokens.push_back(t);
      if (tokens.size() != 5) throw ParseError("a record has five fields: x p q lambda sign");
      rawRecords.push_back(tokens);
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
  }
  if (trace.m < 2) throw DomainError("a trace needs at least two components");
  const auto m = static_cast<std::size_t>(trace.m);
  if (!upper) throw ParseError("missing a=");
  if (upper->size() != m * (m - 1) / 2)
    throw ParseError("a= needs " + std::to_string(m * (m - 1) / 2) + " entries for m=" + std::to_string(m));
  trace.linking.assign(m, std::vector<Integer>(m, Integer(0)));
  std::size_t t = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) trace.linking[i][j] = trace.linking[j][i] = (*upper)[t++];
  if (trace.s && trace.s->size() != m) throw ParseError("s= needs one entry per component");
  for (const auto& tokens : rawRecords) {
    CrossingRecord rec;
    rec.component = static_cast<int>(parseInteger(tokens[0]));
    rec.p = parseIntegerList(tokens[1]);
    rec.q = parseIntegerList(tokens[2]);
    rec.lambda = parseInteger(tokens[3]);
    const Integer sign = parseInteger(tokens[4]);
    rec.sign = sign == 1 ? 1 : (sign == -1 ? -1 : 0);
    checkRecord(trace.linking, rec);
    trace.records.push_back(rec);
  }
  return trace;
}

HomotopyTrace loadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseTrace(buffer.str());
}

Rational betaTilde(const HomotopyTrace& trace) {
  if (trace.m != 2) throw DomainError("the generalized Sato-Levine invariant is defined for two components");
  checkSquare(2, trace.linking);
  const Integer& l = trace.linking[0][1];
  Rational value = trace.baseValue;
  for (const auto& rec : trace.records) {
    checkRecord(trace.linking, rec);
    const Integer& n = rec.p[rec.component == 1 ? 1 : 0];
    value += Rational(rec.sign * n * (l - n));
  }
  return value;
}

RationalMatrix surgeryMatrix(const std::vector<Rational>& s, const IntMatrix& linking) {
  checkSquare(s.size(), linking);
  RationalMatrix a(s.size(), std::vector<Rational>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) a[i][j] = i == j ? s[i] : Rational(linking[i][j]);
  return a;
}

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

Rational betaJump(const std::vector<Rational>& s, const IntMatrix& linking, const CrossingRecord& rec) {
  checkRecord(linking, rec);
  RationalMatrix a = surgeryMatrix(s, linking);
  const auto x = static_cast<std::size_t>(rec.component - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == x) continue;
    a[x][i] = Rational(rec.p[i]);
    a[i][x] = Rational(rec.q[i]);
  }
  a[x][x] = Rational(rec.lambda);
  return determinant(std::move(a));
}

Rational betaChange(const HomotopyTrace& trace, const std::vector<Rational>& s) {
  Rational total = 0;
  for (const auto& rec : trace.records) total += rec.sign * betaJump(s, trace.linking, rec);
  return total;
}

std::vector<bool> invarianceCondition(const std::vector<Rational>& s, const IntMatrix& linking) {
  const RationalMatrix a = surgeryMatrix(s, linking);
  std::vector<bool> out;
  for (std::size_t del = 0; del < a.size(); ++del) {
    RationalMatrix minor;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == del) continue;
      std::vector<Rational> row;
      for (std::size_t j = 0; j < a.size(); ++j)
        if (j != del) row.push_back(a[i][j]);
      minor.push_back(std::move(row));
    }
    out.push_back(determinant(std::move(minor)) == 0);
  }
  return out;
}

IntMatrix linkingMatrix3(const Integer& a12, const Integer& a13, const Integer& a23) {
  return {{0, a12, a13}, {a12, 0, a23}, {a13, a23, 0}};
}

std::vector<Rational> threeComponentSpecialS(const IntMatrix& linking, int sign) {
  checkSquare(3, linking);
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  const Integer& a12 = linking[0][1];
  const Integer& a13 = linking[0][2];
  const Integer& a23 = linking[1][2];
  if (a12 == 0 || a13 == 0 || a23 == 0) throw DomainError("special s needs all linking numbers nonzero");
  auto ratio = [sign](const Integer& x, const Integer& y, const Integer& z) { return Rational(Integer(sign * x * y)) / Rational(z); };
  return {ratio(a12, a13, a23), ratio(a12, a23, a13), ratio(a13, a23, a12)};
}

}  // namespace commcalc
