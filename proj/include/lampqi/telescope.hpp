#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lampqi/quad.hpp"

namespace lampqi {

/// c - a is not an ordered sum over the generating set. `residual()` is the
/// unexpressed remainder in the family's text format.
class DecompositionError : public std::domain_error {
 public:
  DecompositionError(const std::string& what, std::string residual)
      : std::domain_error(what + " (residual " + residual + ")"), residual_(std::move(residual)) {}
  const std::string& residual() const { return residual_; }

 private:
  std::string residual_;
};

template <class P>
struct TelescopeChain {
  std::vector<P> steps;        // v_1, ..., v_k with v_1 + ... + v_k = c - a
  std::vector<Quad<P>> links;  // P_1, ..., P_k
};

/// Writes target as an ordered list of generators (repetition allowed).
/// Generators are consumed greedily by descending delta(0, v), then by
/// descending size; the list is returned in reverse consumption order.
/// BS(1,n): integer multiples by truncated division. Lamplighter (prime n):
/// coefficients in Z_n by elimination. SOL: integer coefficients by
/// unimodular reduction. Throws DecompositionError.
std::vector<BSNumber> express(const BSFamily& fam, const BSNumber& target,
                              const GeneratorSet<BSNumber>& sigma);
std::vector<LampConfig> express(const LampFamily& fam, const LampConfig& target,
                                const GeneratorSet<LampConfig>& sigma);
std::vector<SolVector> express(const SolFamily& fam, SolVector target,
                               const GeneratorSet<SolVector>& sigma);

/// Upper bound on the number of steps a decomposition may produce.
inline constexpr std::size_t max_telescope_steps = 1'000'000;

/// For P = [[a, b], [c, d]] (p1 = a, p2 = b, p4 = c, p3 = d) with
/// a + d = b + c and c - a = v_1 + ... + v_k, the links
/// P_j = [[a + s_{j-1}, b + s_{j-1}], [a + s_j, b + s_j]], s_j = v_1 + ... + v_j.
/// Throws std::invalid_argument if q does not satisfy the corner relation.
template <class F>
TelescopeChain<typename F::Point> telescope_decompose(const F& fam, const Quad<typename F::Point>& q,
                                                      const GeneratorSet<typename F::Point>& sigma) {
  using P = typename F::Point;
  if (!is_parallelogram_relation(fam, q)) {
    throw std::invalid_argument("telescope_decompose: input violates p1 + p3 = p2 + p4");
  }
  if (sigma.elements.empty()) {
    throw DecompositionError("empty generating set", fam.format(fam.sub(q.p[3], q.p[0])));
  }
  const P& a = q.p[0];
  const P& b = q.p[1];
  TelescopeChain<P> chain;
  chain.steps = express(fam, fam.sub(q.p[3], a), sigma);
  P s = fam.zero();
  for (const P& v : chain.steps) {
    const P next = fam.add(s, v);
    chain.links.push_back(Quad<P>{{fam.add(a, s), fam.add(b, s), fam.add(b, next), fam.add(a, next)}});
    s = next;
  }
  return chain;
}

/// Formal corner relation [p1] + [p3] - [p2] - [p4] as point -> coefficient.
template <class P>
std::map<P, long long> formal_relation(const Quad<P>& q) {
  std::map<P, long long> f;
  f[q.p[0]] += 1;
  f[q.p[2]] += 1;
  f[q.p[1]] -= 1;
  f[q.p[3]] -= 1;
  std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
  return f;
}

/// True iff every link satisfies its corner relation exactly and the formal
/// sum of the links' relations equals the input's relation.
template <class F>
bool telescoping_identity_holds(const F& fam, const Quad<typename F::Point>& q,
                                const TelescopeChain<typename F::Point>& chain) {
  using P = typename F::Point;
  std::map<P, long long> total;
  for (const auto& link : chain.links) {
    if (!is_parallelogram_relation(fam, link)) return false;
    for (const auto& [pt, c] : formal_relation(link)) total[pt] += c;
  }
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
  return total == formal_relation(q);
}

}  // namespace lampqi
