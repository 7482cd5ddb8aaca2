#pragma once

#include "qdstrata/numeric.hpp"

#include <string>
#include <vector>

namespace qdstrata {

// Multiset of integers, canonically stored sorted descending.
using OrderMultiset = std::vector<Integer>;

OrderMultiset make_multiset(std::vector<Integer> entries);
std::string multiset_to_string(const OrderMultiset& m);

// Singularity data of a stratum Q(d_1,...,d_m) of meromorphic quadratic
// differentials with at most simple poles; order d means cone angle (d+2)pi.
class QSingularityData {
  public:
    QSingularityData() = default;
    explicit QSingularityData(std::vector<Integer> orders) : orders_(make_multiset(std::move(orders))) {}

    const OrderMultiset& orders() const { return orders_; }
    Integer sum() const;
    bool is_valid() const;  // entries >= -1, sum >= -4 and == 0 mod 4
    void require_valid() const;

    bool operator==(const QSingularityData& o) const { return orders_ == o.orders_; }
    std::string to_string() const { return "Q(" + multiset_to_string(orders_) + ")"; }

  private:
    OrderMultiset orders_;
};

// Singularity data of a stratum H(l_1,...,l_n) of holomorphic Abelian
// differentials; degree l means cone angle (2l+2)pi.  Empty data denotes the
// unmarked flat torus.
class HSingularityData {
  public:
    HSingularityData() = default;
    explicit HSingularityData(std::vector<Integer> degrees) : degrees_(make_multiset(std::move(degrees))) {}

    const OrderMultiset& degrees() const { return degrees_; }
    Integer sum() const;
    bool is_valid() const;  // entries >= 0, sum even
    void require_valid() const;

    bool operator==(const HSingularityData& o) const { return degrees_ == o.degrees_; }
    std::string to_string() const { return "H(" + multiset_to_string(degrees_) + ")"; }

  private:
    OrderMultiset degrees_;
};

Integer genus_q(const QSingularityData& data);  // sum = 4g - 4
Integer genus_h(const HSingularityData& data);  // sum = 2g - 2

OrderMultiset strip_zeros(const OrderMultiset& m);
QSingularityData strip_zeros(const QSingularityData& data);
HSingularityData strip_zeros(const HSingularityData& data);

// Masur--Smillie: Q(alpha) is empty exactly for {}, {1,-1}, {3,1}, {4},
// possibly padded with marked points.
bool is_empty_q(const QSingularityData& data);
// Every H stratum with valid data is nonempty; invalid data routed here
// reports true (no such stratum).
bool is_empty_h(const HSingularityData& data);

// Text syntax: `Q(2,-1,-1)`, `H(0,0)`, or bare `2,-1,-1` (treated as Q).
QSingularityData parse_q(const std::string& text);
HSingularityData parse_h(const std::string& text);

}  // namespace qdstrata
