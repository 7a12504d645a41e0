#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pfsolve/errors.hpp"
#include "pfsolve/graph.hpp"
#include "pfsolve/weyl.hpp"

namespace pfsolve {

/// Coefficients with |b| below this are treated as zero and rejected.
inline constexpr double kMinCoefficient = 1e-300;

/// One term h_v = b_v w_v.
struct HamTerm {
    std::string id;
    WeylLabel label;
    double coeff = 1.0;

    friend bool operator==(const HamTerm&, const HamTerm&) = default;
};

/// H = sum_v b_v w_v over distinct Weyl labels with real nonzero b_v.
class Hamiltonian {
public:
    Hamiltonian() = default;

    Hamiltonian(QuditDims dims, std::vector<HamTerm> terms) : dims_(dims), terms_(std::move(terms)) { validate(); }

    const QuditDims& dims() const { return dims_; }
    const std::vector<HamTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    const HamTerm& term(std::size_t i) const { return terms_.at(i); }

    std::size_t index_of(const std::string& id) const {
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].id == id) return i;
        throw KeyError("unknown term id '" + id + "'");
    }

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        for (const auto& t : terms_) out.push_back(t.id);
        return out;
    }

    friend bool operator==(const Hamiltonian&, const Hamiltonian&) = default;

private:
    void validate() const {
        if (terms_.empty()) throw ParseError("Hamiltonian has no terms");
        std::set<std::string> seen_ids;
        std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> seen_labels;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& t = terms_[i];
            if (t.label.d != dims_.d || static_cast<int>(t.label.sites()) != dims_.n)
                throw DimensionError("term " + std::to_string(i) + " ('" + t.id + "') does not match d=" +
                                     std::to_string(dims_.d) + ", n=" + std::to_string(dims_.n));
            if (!std::isfinite(t.coeff) || std::abs(t.coeff) < kMinCoefficient)
                throw ParseError("term " + std::to_string(i) + " ('" + t.id + "') has zero or non-finite coefficient");
            if (t.id.empty()) throw ParseError("term " + std::to_string(i) + " has an empty id");
            if (!seen_ids.insert(t.id).second) throw ParseError("duplicate term id '" + t.id + "'");
            // Labels differing only by phase are the same operator up to a scalar.
            auto [it, fresh] = seen_labels.emplace(std::make_pair(t.label.x, t.label.z), i);
            if (!fresh)
                throw ParseError("terms " + std::to_string(it->second) + " and " + std::to_string(i) +
                                 " share the Weyl operator " + to_string(t.label) + "; merge them explicitly");
        }
    }

    QuditDims dims_;
    std::vector<HamTerm> terms_;
};

struct AdmissibilityViolation {
    std::size_t u = 0, v = 0;
    int phase = 0;  // symplectic_phase(u, v), not in {0, 1, d-1}
};

/// Pairs whose commutation phase lies outside {0, +1, -1} mod d.
inline std::vector<AdmissibilityViolation> check_admissible(const Hamiltonian& h) {
    std::vector<AdmissibilityViolation> out;
    const int d = h.dims().d;
    for (std::size_t u = 0; u < h.size(); ++u)
        for (std::size_t v = u + 1; v < h.size(); ++v) {
            const int k = symplectic_phase(h.term(u).label, h.term(v).label);
            if (k != 0 && k != 1 && k != d - 1) out.push_back({u, v, k});
        }
    return out;
}

class AdmissibilityError : public Error {
public:
    explicit AdmissibilityError(std::vector<AdmissibilityViolation> v)
        : Error(describe(v)), violations(std::move(v)) {}

    std::vector<AdmissibilityViolation> violations;

private:
    static std::string describe(const std::vector<AdmissibilityViolation>& v) {
        std::string s = "Hamiltonian is not admissible: " + std::to_string(v.size()) + " pair(s) with phase outside {0,+1,-1}";
        if (!v.empty())
            s += " (first: terms " + std::to_string(v[0].u) + "," + std::to_string(v[0].v) + " phase " +
                 std::to_string(v[0].phase) + ")";
        return s;
    }
};

/// Arc u -> v whenever h_u h_v = omega h_v h_u. For d = 2 the two directions
/// coincide and arcs run from the lower to the higher term index.
inline OrientedGraph build_frustration_graph(const Hamiltonian& h) {
    if (auto bad = check_admissible(h); !bad.empty()) throw AdmissibilityError(std::move(bad));
    OrientedGraph g(h.ids());
    const int d = h.dims().d;
    for (std::size_t u = 0; u < h.size(); ++u)
        for (std::size_t v = u + 1; v < h.size(); ++v) {
            const int k = symplectic_phase(h.term(u).label, h.term(v).label);
            if (k == 0) continue;
            if (d == 2 || k == 1)
                g.add_arc(u, v);
            else
                g.add_arc(v, u);
        }
    return g;
}

/// Replaces each term in `ids` by its Hermitian conjugate (coefficient kept).
inline Hamiltonian switch_hamiltonian(const Hamiltonian& h, const std::vector<std::string>& ids) {
    std::vector<bool> flip(h.size(), false);
    for (const auto& id : ids) flip[h.index_of(id)] = true;
    std::vector<HamTerm> terms = h.terms();
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (flip[i]) terms[i].label = conjugate_label(terms[i].label);
    return Hamiltonian(h.dims(), std::move(terms));
}

inline Hamiltonian switch_hamiltonian_by_index(const Hamiltonian& h, const std::vector<std::size_t>& indices) {
    std::vector<std::string> ids;
    for (auto i : indices) {
        if (i >= h.size()) throw KeyError("term index " + std::to_string(i) + " out of range");
        ids.push_back(h.term(i).id);
    }
    return switch_hamiltonian(h, ids);
}

}  // namespace pfsolve
