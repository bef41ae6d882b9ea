#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "l1rank/bitmatrix.hpp"
#include "l1rank/model.hpp"

namespace l1rank {

// Reductions from matrix problems to constrained k-center. Λ enumerates
// {0,1}^r in increasing integer order: λ_i has bit t equal to bit t of i, so
// the unit vector e_t sits at index 2^t.

inline constexpr std::size_t kDefaultMaxRank = 6;

struct RankEncoding {
  std::size_t r;
  std::size_t k;                      // 2^r
  std::vector<std::uint64_t> lambda;  // lambda[i] == i

  explicit RankEncoding(std::size_t rank, std::size_t max_rank = kDefaultMaxRank);
};

// R = {(x·λ_1, ..., x·λ_k) : x in {0,1}^r} over GF(2).
Relation gf2_rank_relation(std::size_t r, std::size_t max_rank = kDefaultMaxRank);
// Same with the Boolean product: entry i is OR_t (x[t] AND λ_i[t]).
Relation boolean_rank_relation(std::size_t r, std::size_t max_rank = kDefaultMaxRank);

struct RankDecoding {
  BitMatrix b;                        // the approximation, same shape as A
  BitMatrix basis;                    // m x r; column t is s_t
  std::vector<std::uint32_t> choice;  // nearest center per column of A
};

struct BooleanDecoding {
  BitMatrix b;  // == boolean_matmul(u, v)
  BitMatrix u;  // m x r
  BitMatrix v;  // r x n
  std::vector<std::uint32_t> choice;
};

KCenterInstance encode_gf2_rank(const BitMatrix& a, std::size_t r,
                                std::size_t max_rank = kDefaultMaxRank);
// Throws EncodingError when the centers violate the rank relation.
RankDecoding decode_gf2_rank(const BitMatrix& a, std::size_t r, const CenterTuple& centers);

KCenterInstance encode_boolean_rank(const BitMatrix& a, std::size_t r,
                                    std::size_t max_rank = kDefaultMaxRank);
BooleanDecoding decode_boolean_rank(const BitMatrix& a, std::size_t r, const CenterTuple& centers);

// k blocks of 2^r centers; each position's relation is the k-fold product
// of the rank-r relation, so block b spans a subspace of dimension <= r.
// The relation has 2^(kr) tuples over k * 2^r centers; kr is capped by
// `max_log_size`.
KCenterInstance encode_projective(const std::vector<BitVec>& vectors, std::size_t r,
                                  std::size_t k, std::size_t max_log_size = kDefaultMaxRank);

struct ProjectiveDecoding {
  std::vector<BitMatrix> bases;  // per subspace: m x r, column t is a spanning vector
  std::vector<std::uint32_t> choice;  // nearest center per vector
};
ProjectiveDecoding decode_projective(const std::vector<BitVec>& vectors, std::size_t r,
                                     std::size_t k, const CenterTuple& centers);

// Each string becomes a column extended by m+1 ones, encoded with r = 1.
KCenterInstance encode_closest_string(const std::vector<BitVec>& strings);
// First m bits of the non-zero center.
BitVec decode_closest_string(const std::vector<BitVec>& strings, const CenterTuple& centers);

}  // namespace l1rank
