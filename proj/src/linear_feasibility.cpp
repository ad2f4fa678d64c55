#include "prickle/linear_feasibility.hpp"

namespace prickle {

namespace {

// One-variable system alpha*b + beta < 0. Returns a witness b, or nullopt.
std::optional<Rat> solve_strict_1var(const std::vector<std::array<Rat, 2>>& rows) {
  bool has_lo = false, has_hi = false;
  Rat lo, hi;
  for (const auto& [alpha, beta] : rows) {
    int s = sgn(alpha);
    if (s == 0) {
      if (sgn(beta) >= 0) return std::nullopt;
      continue;
    }
    Rat bound = -beta / alpha;
    if (s > 0) { // b < bound
      if (!has_hi || bound < hi) hi = bound, has_hi = true;
    } else { // b > bound
      if (!has_lo || bound > lo) lo = bound, has_lo = true;
    }
  }
  if (has_lo && has_hi) {
    if (lo >= hi) return std::nullopt;
    return (lo + hi) / 2;
  }
  if (has_lo) return lo + 1;
  if (has_hi) return hi - 1;
  return Rat(0);
}

} // namespace

std::optional<std::array<Rat, 2>> solve_strict_2var(
    const std::vector<StrictRow>& rows) {
  std::vector<const StrictRow*> pos, neg;
  std::vector<std::array<Rat, 2>> onevar; // alpha*b + beta < 0
  for (const auto& row : rows) {
    int s = sgn(row[0]);
    if (s > 0)
      pos.push_back(&row);
    else if (s < 0)
      neg.push_back(&row);
    else
      onevar.push_back({row[1], row[2]});
  }
  // Pair every lower bound on a with every upper bound:
  //   (p_i q_j - p_j q_i) b + (p_i r_j - p_j r_i) < 0  for i in pos, j in neg.
  for (const StrictRow* i : pos)
    for (const StrictRow* j : neg)
      onevar.push_back({(*i)[0] * (*j)[1] - (*j)[0] * (*i)[1],
                        (*i)[0] * (*j)[2] - (*j)[0] * (*i)[2]});

  auto b = solve_strict_1var(onevar);
  if (!b) return std::nullopt;

  // Back-substitute: p*a < -(q*b + r).
  bool has_lo = false, has_hi = false;
  Rat lo, hi;
  for (const auto& row : rows) {
    int s = sgn(row[0]);
    if (s == 0) continue;
    Rat bound = -(row[1] * *b + row[2]) / row[0];
    if (s > 0) {
      if (!has_hi || bound < hi) hi = bound, has_hi = true;
    } else {
      if (!has_lo || bound > lo) lo = bound, has_lo = true;
    }
  }
  Rat a;
  if (has_lo && has_hi)
    a = (lo + hi) / 2;
  else if (has_lo)
    a = lo + 1;
  else if (has_hi)
    a = hi - 1;
  else
    a = Rat(0);
  return std::array<Rat, 2>{a, *b};
}

} // namespace prickle
