#include "qdstrata/strata.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qdstrata {

OrderMultiset make_multiset(std::vector<Integer> entries) {
    std::sort(entries.begin(), entries.end(), [](const Integer& a, const Integer& b) { return a > b; });
    return entries;
}

std::string multiset_to_string(const OrderMultiset& m) {
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) out += ",";
        out += m[i].str();
    }
    return out;
}

Integer QSingularityData::sum() const {
    Integer s = 0;
    for (const auto& d : orders_) s += d;
    return s;
}

bool QSingularityData::is_valid() const {
    for (const auto& d : orders_)
        if (d < -1) return false;
    Integer s = sum();
    return s >= -4 && s % 4 == 0;
}

void QSingularityData::require_valid() const {
    if (!is_valid())
        throw DomainError("invalid quadratic singularity data " + to_string() +
                          ": entries must be >= -1 and the sum must be >= -4 and divisible by 4");
}

Integer HSingularityData::sum() const {
    Integer s = 0;
    for (const auto& d : degrees_) s += d;
    return s;
}

bool HSingularityData::is_valid() const {
    for (const auto& d : degrees_)
        if (d < 0) return false;
    return sum() % 2 == 0;
}

void HSingularityData::require_valid() const {
    if (!is_valid())
        throw DomainError("invalid Abelian singularity data " + to_string() +
                          ": entries must be >= 0 and the sum must be even");
}

Integer genus_q(const QSingularityData& data) {
    data.require_valid();
    return (data.sum() + 4) / 4;
}

Integer genus_h(const HSingularityData& data) {
    data.require_valid();
    return (data.sum() + 2) / 2;
}

OrderMultiset strip_zeros(const OrderMultiset& m) {
    OrderMultiset out;
    for (const auto& d : m)
        if (d != 0) out.push_back(d);
    return out;
}

QSingularityData strip_zeros(const QSingularityData& data) {
    return QSingularityData(strip_zeros(data.orders()));
}

HSingularityData strip_zeros(const HSingularityData& data) {
    return HSingularityData(strip_zeros(data.degrees()));
}

bool is_empty_q(const QSingularityData& data) {
    data.require_valid();
    OrderMultiset s = strip_zeros(data.orders());
    static const std::vector<OrderMultiset> kEmpty = {
        {}, {Integer(1), Integer(-1)}, {Integer(3), Integer(1)}, {Integer(4)}};
    for (const auto& e : kEmpty)
        if (s == e) return true;
    return false;
}

bool is_empty_h(const HSingularityData& data) { return !data.is_valid(); }

namespace {

std::vector<Integer> parse_entries(const std::string& body, const std::string& original) {
    std::vector<Integer> entries;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) throw ParseError("empty entry in stratum '" + original + "'");
        try {
            entries.emplace_back(token);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + token + "' in stratum '" + original + "'");
        }
        token.clear();
    };
    for (char c : body) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == ',') {
            flush();
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
            token += c;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "' in stratum '" + original + "'");
        }
    }
    if (!token.empty()) flush();
    return entries;
}

// Splits "Q(...)"/"H(...)" prefixes; bare lists have no prefix.
std::pair<char, std::string> split_prefix(const std::string& text) {
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t j = text.size();
    while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
    std::string t = text.substr(i, j - i);
    if (t.empty()) throw ParseError("empty stratum string");
    char head = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
    if (head == 'Q' || head == 'H') {
        size_t open = t.find('(');
        if (open == std::string::npos || t.back() != ')')
            throw ParseError("expected '" + std::string(1, head) + "(...)' in '" + text + "'");
        return {head, t.substr(open + 1, t.size() - open - 2)};
    }
    return {'\0', t};
}

}  // namespace

QSingularityData parse_q(const std::string& text) {
    auto [head, body] = split_prefix(text);
    if (head == 'H') throw ParseError("expected quadratic data, got '" + text + "'");
    return QSingularityData(parse_entries(body, text));
}

HSingularityData parse_h(const std::string& text) {
    auto [head, body] = split_prefix(text);
    if (head == 'Q') throw ParseError("expected Abelian data, got '" + text + "'");
    return HSingularityData(parse_entries(body, text));
}

}  // namespace qdstrata
