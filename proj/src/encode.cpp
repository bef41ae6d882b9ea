#include "l1rank/encode.hpp"

#include <bit>
#include <limits>

#include "l1rank/error.hpp"

namespace l1rank {

namespace {

void check_rank(std::size_t r, std::size_t max_rank) {
  if (r == 0) throw ParameterError("target rank r must be at least 1");
  if (r > max_rank) {
    throw BudgetError("encode", "rank " + std::to_string(r) + " exceeds the cap r <= " +
                                    std::to_string(max_rank) + " (k = 2^r centers)");
  }
}

template <typename Combine>
Relation rank_relation(std::size_t r, std::size_t max_rank, Combine combine) {
  check_rank(r, max_rank);
  const std::size_t k = std::size_t{1} << r;
  std::vector<TupleWord> tuples;
  tuples.reserve(k);
  for (std::uint64_t x = 0; x < k; ++x) {
    TupleWord t = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
      if (combine(x, i)) t |= TupleWord{1} << i;
    }
    tuples.push_back(t);
  }
  return Relation(k, std::move(tuples));
}

bool gf2_dot(std::uint64_t x, std::uint64_t lambda) { return std::popcount(x & lambda) & 1; }
bool boolean_dot(std::uint64_t x, std::uint64_t lambda) { return (x & lambda) != 0; }

KCenterInstance encode_columns(const BitMatrix& a, const Relation& rel) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw ParameterError("matrix must have at least one row and one column");
  }
  return KCenterInstance(a.columns(), rel.arity(), std::vector<Relation>(a.rows(), rel));
}

// s_t[j] is the entry of column word j at the unit-vector index 2^t (offset
// by `first` when the centers are split into blocks).
BitMatrix recover_basis(const CenterTuple& centers, std::size_t r, std::size_t first) {
  std::vector<BitVec> rows;
  rows.reserve(centers.dim());
  for (std::size_t j = 0; j < centers.dim(); ++j) {
    const TupleWord w = centers.column_word(j);
    BitVec row(r);
    for (std::size_t t = 0; t < r; ++t) {
      if (tuple_bit(w, first + (std::size_t{1} << t))) row.set(t);
    }
    rows.push_back(std::move(row));
  }
  return BitMatrix::from_rows(std::move(rows), r);
}

void require_satisfied(const CenterTuple& centers, const KCenterInstance& inst) {
  if (centers.size() != inst.k() || centers.dim() != inst.m() ||
      !satisfies(centers, inst.relations())) {
    throw EncodingError("center tuple does not satisfy the encoding relations");
  }
}

}  // namespace

RankEncoding::RankEncoding(std::size_t rank, std::size_t max_rank) : r(rank) {
  check_rank(rank, max_rank);
  k = std::size_t{1} << r;
  lambda.resize(k);
  for (std::size_t i = 0; i < k; ++i) lambda[i] = i;
}

Relation gf2_rank_relation(std::size_t r, std::size_t max_rank) {
  return rank_relation(r, max_rank, gf2_dot);
}

Relation boolean_rank_relation(std::size_t r, std::size_t max_rank) {
  return rank_relation(r, max_rank, boolean_dot);
}

KCenterInstance encode_gf2_rank(const BitMatrix& a, std::size_t r, std::size_t max_rank) {
  return encode_columns(a, gf2_rank_relation(r, max_rank));
}

RankDecoding decode_gf2_rank(const BitMatrix& a, std::size_t r, const CenterTuple& centers) {
  const auto inst = encode_gf2_rank(a, r, std::numeric_limits<std::size_t>::max());
  require_satisfied(centers, inst);
  RankDecoding out;
  out.basis = recover_basis(centers, r, 0);
  out.choice = induced_partition(inst.vectors(), centers);
  std::vector<BitVec> cols;
  cols.reserve(a.cols());
  for (auto c : out.choice) cols.push_back(centers[c]);
  out.b = BitMatrix::from_columns(cols, a.rows());
  return out;
}

KCenterInstance encode_boolean_rank(const BitMatrix& a, std::size_t r, std::size_t max_rank) {
  return encode_columns(a, boolean_rank_relation(r, max_rank));
}

BooleanDecoding decode_boolean_rank(const BitMatrix& a, std::size_t r,
                                    const CenterTuple& centers) {
  const auto inst = encode_boolean_rank(a, r, std::numeric_limits<std::size_t>::max());
  require_satisfied(centers, inst);
  BooleanDecoding out;
  out.u = recover_basis(centers, r, 0);
  out.choice = induced_partition(inst.vectors(), centers);
  std::vector<BitVec> vcols;
  std::vector<BitVec> bcols;
  for (auto c : out.choice) {
    BitVec lambda(r);
    for (std::size_t t = 0; t < r; ++t) {
      if ((c >> t) & 1u) lambda.set(t);
    }
    vcols.push_back(std::move(lambda));
    bcols.push_back(centers[c]);
  }
  out.v = BitMatrix::from_columns(vcols, r);
  out.b = BitMatrix::from_columns(bcols, a.rows());
  return out;
}

KCenterInstance encode_projective(const std::vector<BitVec>& vectors, std::size_t r,
                                  std::size_t k, std::size_t max_log_size) {
  if (r == 0 || k == 0) throw ParameterError("projective k-center needs r >= 1 and k >= 1");
  if (vectors.empty()) throw ParameterError("projective k-center needs at least one vector");
  if (k * r > max_log_size) {
    throw BudgetError("encode", "relation size 2^(k*r) = 2^" + std::to_string(k * r) +
                                    " exceeds the cap 2^" + std::to_string(max_log_size));
  }
  const Relation block = gf2_rank_relation(r, r);
  const std::size_t width = std::size_t{1} << r;
  const std::size_t arity = k * width;
  if (arity > kMaxArity) throw BudgetError("encode", "k * 2^r exceeds 64 centers");

  std::vector<TupleWord> product{0};
  for (std::size_t b = 0; b < k; ++b) {
    std::vector<TupleWord> next;
    next.reserve(product.size() * block.size());
    for (auto prefix : product) {
      for (auto t : block.tuples()) next.push_back(prefix | (t << (b * width)));
    }
    product = std::move(next);
  }
  const std::size_t m = vectors.front().size();
  return KCenterInstance(vectors, arity,
                         std::vector<Relation>(m, Relation(arity, std::move(product))));
}

ProjectiveDecoding decode_projective(const std::vector<BitVec>& vectors, std::size_t r,
                                     std::size_t k, const CenterTuple& centers) {
  const auto inst = encode_projective(vectors, r, k, std::numeric_limits<std::size_t>::max());
  require_satisfied(centers, inst);
  ProjectiveDecoding out;
  const std::size_t width = std::size_t{1} << r;
  for (std::size_t b = 0; b < k; ++b) out.bases.push_back(recover_basis(centers, r, b * width));
  out.choice = induced_partition(vectors, centers);
  return out;
}

KCenterInstance encode_closest_string(const std::vector<BitVec>& strings) {
  if (strings.empty()) throw ParameterError("closest string needs at least one string");
  const std::size_t m = strings.front().size();
  std::vector<BitVec> columns;
  columns.reserve(strings.size());
  for (const auto& s : strings) {
    if (s.size() != m) throw DimensionError("closest string inputs have differing lengths");
    BitVec col(2 * m + 1);
    for (std::size_t i = 0; i < m; ++i) col.set(i, s.get(i));
    for (std::size_t i = m; i < 2 * m + 1; ++i) col.set(i);
    columns.push_back(std::move(col));
  }
  return encode_gf2_rank(BitMatrix::from_columns(columns), 1);
}

BitVec decode_closest_string(const std::vector<BitVec>& strings, const CenterTuple& centers) {
  const auto inst = encode_closest_string(strings);
  require_satisfied(centers, inst);
  const std::size_t m = strings.front().size();
  BitVec out(m);
  for (std::size_t i = 0; i < m; ++i) out.set(i, centers[1].get(i));
  return out;
}

}  // namespace l1rank
