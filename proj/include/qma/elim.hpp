#pragma once

#include "qma/ratfunc.hpp"

#include <map>

namespace qma {

// Sparse incremental row echelon over an ordered key type, with exact
// RatFunc arithmetic. Rows are reduced against stored pivots on insert;
// pivot rows are normalized to leading coefficient 1.
template <class Key>
class Eliminator {
public:
    using Row = std::map<Key, RatFunc>;

    // fully reduce without storing; no key of the result leads a pivot
    Row reduce(Row row) const {
        Row out;
        while (!row.empty()) {
            auto first = row.begin();
            auto it = pivots_.find(first->first);
            if (it == pivots_.end()) {
                out.emplace(first->first, first->second);
                row.erase(first);
            } else {
                subtract_multiple(row, first->second, it->second);
            }
        }
        return out;
    }

    // reduce against pivots; store the remainder as a new pivot if nonzero.
    // Returns true when the rank grew.
    bool insert(Row row) {
        while (!row.empty()) {
            auto it = pivots_.find(row.begin()->first);
            if (it == pivots_.end()) {
                RatFunc inv = row.begin()->second.inv();
                for (auto& [k, v] : row) v *= inv;
                pivots_.emplace(row.begin()->first, std::move(row));
                return true;
            }
            subtract_multiple(row, row.begin()->second, it->second);
        }
        return false;
    }

    long rank() const { return static_cast<long>(pivots_.size()); }
    const std::map<Key, Row>& pivots() const { return pivots_; }

private:
    // f by value: callers pass a coefficient living inside row, which the
    // first iteration erases
    static void subtract_multiple(Row& row, RatFunc f, const Row& pivot) {
        for (const auto& [k, v] : pivot) {
            RatFunc prod = f * v;
            if (prod.is_zero()) continue;
            auto jt = row.find(k);
            if (jt == row.end()) {
                row.emplace(k, -prod);
            } else {
                jt->second -= prod;
                if (jt->second.is_zero()) row.erase(jt);
            }
        }
    }

    std::map<Key, Row> pivots_;
};

}  // namespace qma
