#include "naive.hpp"

#include <algorithm>
#include <limits>

namespace l1rank::testing {

std::size_t naive_distance(const BitVec& x, const BitVec& y) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x.get(i) != y.get(i);
  return d;
}

std::size_t naive_rank(const BitMatrix& m) {
  const std::size_t rows = m.rows();
  std::size_t best = 0;
  for (std::uint32_t subset = 1; subset < (1u << rows); ++subset) {
    // Independent iff no non-empty sub-subset XORs to zero.
    bool independent = true;
    for (std::uint32_t sub = subset; sub && independent; sub = (sub - 1) & subset) {
      bool zero = true;
      for (std::size_t c = 0; c < m.cols() && zero; ++c) {
        bool bit = false;
        for (std::size_t r = 0; r < rows; ++r) {
          if ((sub >> r) & 1u) bit ^= m.get(r, c);
        }
        zero = !bit;
      }
      if (zero) independent = false;
    }
    if (independent) {
      best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(subset)));
    }
  }
  return best;
}

namespace {

// Calls visit(centers) for every choice of one tuple per position.
template <class Visit>
void for_each_tuple_choice(const std::vector<Relation>& rels, std::size_t k, std::size_t m,
                           Visit&& visit) {
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    std::vector<BitVec> centers(k, BitVec(m));
    for (std::size_t j = 0; j < m; ++j) {
      const TupleWord t = rels[j][idx[j]];
      for (std::size_t i = 0; i < k; ++i) centers[i].set(j, (t >> i) & 1u);
    }
    visit(centers);
    std::size_t j = 0;
    while (j < m && ++idx[j] == rels[j].size()) idx[j++] = 0;
    if (j == m) return;
  }
}

}  // namespace

std::size_t naive_kcenter(const KCenterInstance& inst) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_tuple_choice(inst.relations(), inst.k(), inst.m(), [&](const auto& centers) {
    std::size_t worst = 0;
    for (const auto& x : inst.vectors()) {
      std::size_t near = std::numeric_limits<std::size_t>::max();
      for (const auto& c : centers) near = std::min(near, naive_distance(x, c));
      worst = std::max(worst, near);
    }
    best = std::min(best, worst);
  });
  return inst.n() == 0 ? 0 : best;
}

std::size_t naive_star(const PartitionStarInstance& inst) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_tuple_choice(inst.relations(), inst.k(), inst.m(), [&](const auto& centers) {
    std::size_t worst = 0;
    for (std::size_t x = 0; x < inst.n(); ++x) {
      worst = std::max(worst, naive_distance(inst.vectors()[x], centers[inst.partition()[x]]) +
                                  inst.offsets()[x]);
    }
    best = std::min(best, worst);
  });
  return best;
}

std::size_t naive_partition(const PartitionInstance& inst) {
  return naive_star(PartitionStarInstance(inst, std::vector<std::size_t>(inst.n(), 0)));
}

std::size_t naive_closest_string(const std::vector<BitVec>& strings) {
  const std::size_t m = strings.front().size();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << m); ++c) {
    BitVec center(m);
    for (std::size_t i = 0; i < m; ++i) center.set(i, (c >> i) & 1u);
    std::size_t worst = 0;
    for (const auto& s : strings) worst = std::max(worst, naive_distance(s, center));
    best = std::min(best, worst);
  }
  return best;
}

bool naive_boolean_rank_at_most(const BitMatrix& b, std::size_t r) {
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  const std::uint64_t ucount = std::uint64_t{1} << (m * r);
  const std::uint64_t vcount = std::uint64_t{1} << (r * n);
  for (std::uint64_t u = 0; u < ucount; ++u) {
    for (std::uint64_t v = 0; v < vcount; ++v) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        for (std::size_t j = 0; j < n && ok; ++j) {
          bool bit = false;
          for (std::size_t t = 0; t < r; ++t) {
            bit = bit || (((u >> (i * r + t)) & 1u) && ((v >> (t * n + j)) & 1u));
          }
          ok = bit == b.get(i, j);
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

std::size_t naive_projective_rank1(const std::vector<BitVec>& vectors, std::size_t k) {
  const std::size_t m = vectors.front().size();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint64_t> pick(k, 0);
  const std::uint64_t per = std::uint64_t{1} << m;
  while (true) {
    std::size_t worst = 0;
    for (const auto& x : vectors) {
      std::size_t near = naive_distance(x, BitVec(m));
      for (auto s : pick) {
        BitVec v(m);
        for (std::size_t i = 0; i < m; ++i) v.set(i, (s >> i) & 1u);
        near = std::min(near, naive_distance(x, v));
      }
      worst = std::max(worst, near);
    }
    best = std::min(best, worst);
    std::size_t i = 0;
    while (i < k && ++pick[i] == per) pick[i++] = 0;
    if (i == k) break;
  }
  return best;
}

std::size_t naive_best_partition_cost(const std::vector<BitVec>& vectors,
                                      const CenterTuple& centers) {
  const std::size_t n = vectors.size();
  const std::size_t k = centers.size();
  std::vector<std::size_t> assign(n, 0);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  while (true) {
    std::size_t worst = 0;
    for (std::size_t x = 0; x < n; ++x) {
      worst = std::max(worst, naive_distance(vectors[x], centers[assign[x]]));
    }
    best = std::min(best, worst);
    std::size_t x = 0;
    while (x < n && ++assign[x] == k) assign[x++] = 0;
    if (x == n) break;
  }
  return best;
}

}  // namespace l1rank::testing
