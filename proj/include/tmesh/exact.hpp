#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tmesh/errors.hpp"

namespace tmesh {

// GMP rationals are kept canonical by every arithmetic operation; only
// values built from strings need an explicit canonicalize().
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
Rational abs(const Rational& q);

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);
    ExactMatrix(std::initializer_list<std::initializer_list<Rational>> init);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Rational>& entries() const { return data_; }

    bool operator==(const ExactMatrix& o) const;

    ExactMatrix submatrix(const std::vector<std::size_t>& row_idx,
                          const std::vector<std::size_t>& col_idx) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RrefResult {
    ExactMatrix matrix;
    std::vector<std::size_t> pivots;
};

std::size_t rank(const ExactMatrix& m);
Rational det(const ExactMatrix& m);
RrefResult rref(const ExactMatrix& m);

// (d+1) x k, row p holds nodes[j]^p.
ExactMatrix vandermonde(const std::vector<Rational>& nodes, std::size_t degree);

// prod_j (to - mono[j]) / (from - mono[j])
Rational lagrange_ratio(const std::vector<Rational>& mono_nodes, const Rational& from,
                        const Rational& to);

// The 2n x 2n matrix with rows (e_{2i-1} + a_i e_{2i}) and (e_{2i} + b_i e_{2i+1}),
// indices taken cyclically.
ExactMatrix cycle_matrix(const std::vector<Rational>& a, const std::vector<Rational>& b);
Rational cycle_matrix_abs_det(const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace tmesh
