#pragma once

#include <json.hpp>

#include "tmesh/exact.hpp"

namespace tmesh {

using json = nlohmann::ordered_json;

// Integers that fit in 64 bits are written as JSON numbers, everything else as "p/q".
inline json rational_to_json(const Rational& q)
{
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
    return json(to_string(q));
}

inline Rational rational_from_json(const json& j)
{
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return parse_rational(std::to_string(j.get<std::uint64_t>()));
        return Rational(j.get<long>());
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError("expected an integer or \"p/q\" string, got " + j.dump());
}

inline json matrix_to_json(const ExactMatrix& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace tmesh
