#pragma once

#include <sstream>
#include <string>

#include "fano10/matrix.hpp"
#include "fano10/poly.hpp"

namespace fano10 {

// Text form of a polynomial: `arity; [e0 e1 ... ek : coeff] ...`
// with coefficients in the FieldElement decimal forms
// (`num/den`, `r mod p`, or extension coefficient lists).
inline std::string poly_to_text(const MultiPoly& p) {
    std::ostringstream os;
    os << p.arity() << ";";
    for (const auto& [e, c] : p.terms()) {
        os << " [";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) os << " ";
            os << e[i];
        }
        os << " : " << c.to_string() << "]";
    }
    return os.str();
}

inline MultiPoly poly_from_text(const FieldPtr& field, const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("missing arity separator");
    unsigned arity = static_cast<unsigned>(std::stoul(text.substr(0, semi)));
    std::vector<MultiPoly::Term> terms;
    std::size_t pos = semi + 1;
    while (true) {
        auto open = text.find('[', pos);
        if (open == std::string::npos) break;
        auto close = text.find(']', open);
        if (close == std::string::npos) throw std::invalid_argument("unterminated term");
        std::string body = text.substr(open + 1, close - open - 1);
        auto colon = body.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("missing coefficient separator");
        std::istringstream es(body.substr(0, colon));
        Exponents e;
        unsigned v;
        while (es >> v) e.push_back(v);
        if (e.size() != arity) throw std::invalid_argument("exponent arity mismatch in term");
        std::string coeff = body.substr(colon + 1);
        // trim surrounding spaces
        auto b = coeff.find_first_not_of(' ');
        auto l = coeff.find_last_not_of(' ');
        coeff = (b == std::string::npos) ? "" : coeff.substr(b, l - b + 1);
        terms.emplace_back(std::move(e), field->parse(coeff));
        pos = close + 1;
    }
    return MultiPoly::from_terms(field, arity, std::move(terms));
}

inline std::string matrix_to_text(const PolyMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << poly_to_text(m.at(i, j)) << "\n";
    return os.str();
}

} // namespace fano10
