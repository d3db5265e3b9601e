#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commcalc/integer.hpp"

namespace commcalc {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// One self-crossing change of component x (1-based). p and q hold the
/// linking numbers of the two lobes with every component; entries at x are
/// ignored. `sign` is +1 for the recorded direction and -1 for its reverse.
struct CrossingRecord {
  int component = 1;
  std::vector<Integer> p;
  std::vector<Integer> q;
  Integer lambda = 0;
  int sign = 1;
};

struct HomotopyTrace {
  int m = 2;
  /// Symmetric linking matrix with zero diagonal.
  IntMatrix linking;
  std::vector<CrossingRecord> records;
  Rational baseValue = 0;
  /// Surgery coefficients for the determinant calculus, when given.
  std::optional<std::vector<Rational>> s;
};

/// Lines "m=<int>", "a=<a12,a13,..,a23,..>" (upper triangle, row by row),
/// "base=<rational>", "s=<r1,..,rm>" and records
/// "x p1,..,pm q1,..,qm lambda sign"; '#' starts a comment.
HomotopyTrace parseTrace(std::string_view text);
HomotopyTrace loadTrace(const std::string& path);
Rational parseRational(std::string_view text);

/// Validates lobe data against the linking matrix: p_i + q_i = a_xi.
void checkRecord(const IntMatrix& linking, const CrossingRecord& rec);

/// base + sum of sign * n (l - n), n the first lobe's linking with the other
/// component and l the linking number. Two components only.
Rational betaTilde(const HomotopyTrace& trace);

/// Surgery matrix: diagonal s, off-diagonal linking numbers.
RationalMatrix surgeryMatrix(const std::vector<Rational>& s, const IntMatrix& linking);
Rational determinant(RationalMatrix a);

/// beta(L_1, s) - beta(L_0, s): the surgery matrix with row x replaced by p,
/// column x by q and lambda at (x, x).
Rational betaJump(const std::vector<Rational>& s, const IntMatrix& linking, const CrossingRecord& rec);
/// Sum of sign * betaJump over the records of a trace.
Rational betaChange(const HomotopyTrace& trace, const std::vector<Rational>& s);

/// For each i, whether the principal minor deleting row and column i vanishes.
std::vector<bool> invarianceCondition(const std::vector<Rational>& s, const IntMatrix& linking);

/// s_i = sign * a_ij a_ik / a_jk for three components with nonzero linking.
std::vector<Rational> threeComponentSpecialS(const IntMatrix& linking, int sign);
/// Symmetric 3x3 linking matrix from a12, a13, a23.
IntMatrix linkingMatrix3(const Integer& a12, const Integer& a13, const Integer& a23);

}  // namespace commcalc
