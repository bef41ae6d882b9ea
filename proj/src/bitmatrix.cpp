#include "l1rank/bitmatrix.hpp"

#include <algorithm>
#include <bit>

#include "l1rank/error.hpp"

namespace l1rank {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

BitMatrix BitMatrix::from_rows(std::vector<BitVec> rows, std::size_t cols) {
  BitMatrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? cols : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != m.cols_) {
      throw DimensionError("matrix rows have differing lengths");
    }
  }
  m.data_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::from_columns(const std::vector<BitVec>& columns, std::size_t rows) {
  const std::size_t m = columns.empty() ? rows : columns.front().size();
  BitMatrix out(m, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != m) {
      throw DimensionError("matrix columns have differing lengths");
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (columns[c].get(r)) out.data_[r].set(c);
    }
  }
  return out;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitVec> vs;
  vs.reserve(rows.size());
  for (const auto& s : rows) vs.push_back(BitVec::from_string(s));
  return from_rows(std::move(vs));
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].set(i);
  return m;
}

BitVec BitMatrix::column(std::size_t c) const {
  if (c >= cols_) throw DimensionError("column index out of range");
  BitVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (data_[r].get(c)) out.set(r);
  }
  return out;
}

std::vector<BitVec> BitMatrix::columns() const {
  std::vector<BitVec> out(cols_, BitVec(rows_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (data_[r].get(c)) out[c].set(r);
    }
  }
  return out;
}

BitMatrix BitMatrix::transpose() const { return from_rows(columns(), rows_); }

BitMatrix BitMatrix::operator^(const BitMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionError("matrix shape mismatch in XOR");
  }
  BitMatrix out;
  out.rows_ = rows_;
  out.cols_ = cols_;
  out.data_.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.data_.push_back(data_[r] ^ other.data_[r]);
  return out;
}

std::size_t gf2_rank(const BitMatrix& m) {
  // Row echelon form by XOR elimination on packed words.
  const std::size_t nwords = words_for(m.cols());
  std::vector<std::vector<Word>> rows;
  rows.reserve(m.rows());
  for (const auto& r : m.row_vectors()) rows.emplace_back(r.words().begin(), r.words().end());

  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
    const std::size_t w = col / kWordBits;
    const Word bit = Word{1} << (col % kWordBits);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][w] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][w] & bit) {
        for (std::size_t k = w; k < nwords; ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t column_sum_norm(const BitMatrix& m) {
  std::vector<std::size_t> counts(m.cols(), 0);
  for (const auto& row : m.row_vectors()) {
    auto ws = row.words();
    for (std::size_t w = 0; w < ws.size(); ++w) {
      Word bits = ws[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        ++counts[w * kWordBits + static_cast<std::size_t>(b)];
        bits &= bits - 1;
      }
    }
  }
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

namespace {

template <typename Accumulate>
BitMatrix row_combination_product(const BitMatrix& u, const BitMatrix& v, Accumulate acc) {
  if (u.cols() != v.rows()) {
    throw DimensionError("matrix product: inner dimensions " + std::to_string(u.cols()) +
                         " and " + std::to_string(v.rows()) + " differ");
  }
  std::vector<BitVec> out;
  out.reserve(u.rows());
  for (std::size_t i = 0; i < u.rows(); ++i) {
    BitVec row(v.cols());
    for (std::size_t t = 0; t < u.cols(); ++t) {
      if (u.get(i, t)) row = acc(row, v.row(t));
    }
    out.push_back(std::move(row));
  }
  return BitMatrix::from_rows(std::move(out), v.cols());
}

}  // namespace

BitMatrix gf2_matmul(const BitMatrix& u, const BitMatrix& v) {
  return row_combination_product(u, v, [](const BitVec& a, const BitVec& b) { return a ^ b; });
}

BitMatrix boolean_matmul(const BitMatrix& u, const BitMatrix& v) {
  return row_combination_product(u, v, [](const BitVec& a, const BitVec& b) { return a | b; });
}

BitVec gf2_apply(const BitMatrix& a, const BitVec& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matrix-vector product: matrix has " + std::to_string(a.cols()) +
                         " columns, vector has length " + std::to_string(x.size()));
  }
  BitVec out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto rs = a.row(r).words();
    auto xs = x.words();
    unsigned parity = 0;
    for (std::size_t w = 0; w < rs.size(); ++w) parity ^= std::popcount(rs[w] & xs[w]) & 1u;
    if (parity) out.set(r);
  }
  return out;
}

}  // namespace l1rank
