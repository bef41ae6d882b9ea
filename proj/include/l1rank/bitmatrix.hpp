#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "l1rank/bitvec.hpp"

namespace l1rank {

// Dense binary matrix with bit-packed rows. Immutable once built; every
// operation returns a new value.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);  // all zeros

  // All rows must share one length; an empty list needs `cols` explicitly.
  static BitMatrix from_rows(std::vector<BitVec> rows, std::size_t cols = 0);
  static BitMatrix from_columns(const std::vector<BitVec>& columns, std::size_t rows = 0);
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept { return data_[r].get(c); }
  const BitVec& row(std::size_t r) const noexcept { return data_[r]; }
  const std::vector<BitVec>& row_vectors() const noexcept { return data_; }

  BitVec column(std::size_t c) const;
  std::vector<BitVec> columns() const;
  BitMatrix transpose() const;

  // GF(2) difference (entry-wise XOR).
  BitMatrix operator^(const BitMatrix& other) const;

  bool operator==(const BitMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVec> data_;
};

std::size_t gf2_rank(const BitMatrix& m);

// Maximum number of ones in a column. On A ^ B this is the column-sum norm
// of the difference.
std::size_t column_sum_norm(const BitMatrix& m);

// Product over GF(2): entry (i,j) is the parity of row i of u AND column j of v.
BitMatrix gf2_matmul(const BitMatrix& u, const BitMatrix& v);

// Product over the Boolean semiring (AND, OR).
BitMatrix boolean_matmul(const BitMatrix& u, const BitMatrix& v);

// Matrix-vector product over GF(2).
BitVec gf2_apply(const BitMatrix& a, const BitVec& x);

}  // namespace l1rank
