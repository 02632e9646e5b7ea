#include "tmesh/exact.hpp"

#include <algorithm>
#include <cctype>

namespace tmesh {

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("not a rational: '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), q(den, 10);
    if (q == 0) throw ParseError("zero denominator: '" + text + "'");
    Rational r(n, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

Rational abs(const Rational& q)
{
    return q < 0 ? Rational(-q) : q;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0))
{
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<Rational>> init)
{
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) throw DimensionError("ragged matrix literal");
        for (const auto& v : row) data_.push_back(v);
    }
}

bool ExactMatrix::operator==(const ExactMatrix& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

ExactMatrix ExactMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                                   const std::vector<std::size_t>& col_idx) const
{
    ExactMatrix s(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j)
            s(i, j) = (*this)(row_idx[i], col_idx[j]);
    return s;
}

namespace {

// Forward elimination to row echelon form. Pivot is the first nonzero entry
// scanning down the column. Returns pivot columns and the number of row swaps.
std::pair<std::vector<std::size_t>, std::size_t> echelon(ExactMatrix& a, bool reduce)
{
    const std::size_t R = a.rows(), C = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t swaps = 0;
    std::size_t r = 0;
    Rational f;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && sgn(a(p, c)) == 0) ++p;
        if (p == R) continue;
        if (p != r) {
            for (std::size_t j = c; j < C; ++j) std::swap(a(p, j), a(r, j));
            ++swaps;
        }
        if (reduce) {
            Rational inv = 1 / a(r, c);
            for (std::size_t j = c; j < C; ++j) a(r, j) *= inv;
        }
        for (std::size_t i = reduce ? 0 : r + 1; i < R; ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < C; ++j)
                if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {pivots, swaps};
}

}  // namespace

std::size_t rank(const ExactMatrix& m)
{
    ExactMatrix a = m;
    return echelon(a, false).first.size();
}

Rational det(const ExactMatrix& m)
{
    if (m.rows() != m.cols()) throw DimensionError("det of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    ExactMatrix a = m;
    auto [pivots, swaps] = echelon(a, false);
    if (pivots.size() < n) return Rational(0);
    Rational d = (swaps % 2) ? Rational(-1) : Rational(1);
    for (std::size_t i = 0; i < n; ++i) d *= a(i, i);
    return d;
}

RrefResult rref(const ExactMatrix& m)
{
    RrefResult out{m, {}};
    out.pivots = echelon(out.matrix, true).first;
    return out;
}

ExactMatrix vandermonde(const std::vector<Rational>& nodes, std::size_t degree)
{
    auto sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidGeometry("vandermonde: duplicate nodes");
    ExactMatrix v(degree + 1, nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        Rational p = 1;
        for (std::size_t r = 0; r <= degree; ++r) {
            v(r, j) = p;
            p *= nodes[j];
        }
    }
    return v;
}

Rational lagrange_ratio(const std::vector<Rational>& mono_nodes, const Rational& from,
                        const Rational& to)
{
    Rational num = 1, den = 1;
    for (const auto& m : mono_nodes) {
        if (from == m) throw DivisionByZero("lagrange_ratio: 'from' coincides with a mono node");
        num *= to - m;
        den *= from - m;
    }
    return num / den;
}

ExactMatrix cycle_matrix(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    const std::size_t n = a.size();
    if (n < 2 || b.size() != n) throw PreconditionError("cycle matrix needs n >= 2 and |a| = |b|");
    ExactMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, 2 * i) = 1;
        m(i, 2 * i + 1) = a[i];
        m(n + i, 2 * i + 1) = 1;
        m(n + i, (2 * i + 2) % (2 * n)) = b[i];
    }
    return m;
}

Rational cycle_matrix_abs_det(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    if (a.size() < 2 || b.size() != a.size())
        throw PreconditionError("cycle_matrix_abs_det needs n >= 2 and |a| = |b|");
    Rational p = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0 || sgn(b[i]) == 0)
            throw PreconditionError("cycle_matrix_abs_det: zero entry");
        p *= a[i] * b[i];
    }
    return abs(Rational(1 - p));
}

}  // namespace tmesh
