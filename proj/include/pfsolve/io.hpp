#pragma once

// JSON Hamiltonian format, DOT export, and JSON views of reports.
//
//   {"d": 3, "n": 2, "terms": [{"id": "x1", "coeff": 1.0, "phase2": 0, "x": [1, 0], "z": [0, 0]}, ...]}
//
// "id" and "phase2" are optional (defaults "h<index>" and 0).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pfsolve/errors.hpp"
#include "pfsolve/graph.hpp"
#include "pfsolve/graph_algorithms.hpp"
#include "pfsolve/hamiltonian.hpp"
#include "pfsolve/indpoly.hpp"
#include "pfsolve/oracle.hpp"
#include "pfsolve/spectrum.hpp"
#include "pfsolve/switching.hpp"
#include "pfsolve/weyl.hpp"

namespace pfsolve {

using json = nlohmann::json;

namespace detail {

inline void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ParseError(where + ": unknown field '" + it.key() + "'");
}

inline long long get_int(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ParseError(where + ": field '" + key + "' must be an integer");
    return v.get<long long>();
}

inline std::vector<int> get_exponents(const json& j, const std::string& key, int n, int d, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_array()) throw ParseError(where + ": field '" + key + "' must be an array");
    if (v.size() != static_cast<std::size_t>(n))
        throw ParseError(where + ": '" + key + "' has " + std::to_string(v.size()) + " entries, expected n = " + std::to_string(n));
    std::vector<int> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) throw ParseError(where + ": '" + key + "' entries must be integers");
        out.push_back(mod(e.get<long long>(), d));
    }
    return out;
}

}  // namespace detail

inline Hamiltonian parse_hamiltonian(const json& j) {
    detail::only_keys(j, {"d", "n", "terms"}, "hamiltonian");
    const long long d = detail::get_int(j, "d", "hamiltonian");
    const long long n = detail::get_int(j, "n", "hamiltonian");
    if (d < 2 || d > 64) throw ParseError("hamiltonian: d = " + std::to_string(d) + " is outside [2, 64]");
    if (n < 1 || n > 64) throw ParseError("hamiltonian: n = " + std::to_string(n) + " is outside [1, 64]");
    if (!j.contains("terms") || !j.at("terms").is_array()) throw ParseError("hamiltonian: 'terms' must be an array");
    const QuditDims dims(static_cast<int>(d), static_cast<int>(n));
    std::vector<HamTerm> terms;
    std::size_t idx = 0;
    for (const auto& t : j.at("terms")) {
        const std::string where = "term " + std::to_string(idx);
        detail::only_keys(t, {"id", "coeff", "phase2", "x", "z"}, where);
        if (!t.contains("coeff") || !t.at("coeff").is_number()) throw ParseError(where + ": 'coeff' must be a number");
        const double coeff = t.at("coeff").get<double>();
        if (!std::isfinite(coeff) || std::abs(coeff) < kMinCoefficient)
            throw ParseError(where + ": coefficient must be finite and nonzero");
        long long phase2 = 0;
        if (t.contains("phase2")) phase2 = detail::get_int(t, "phase2", where);
        std::string id = "h" + std::to_string(idx);
        if (t.contains("id")) {
            if (!t.at("id").is_string()) throw ParseError(where + ": 'id' must be a string");
            id = t.at("id").get<std::string>();
        }
        auto x = detail::get_exponents(t, "x", dims.n, dims.d, where);
        auto z = detail::get_exponents(t, "z", dims.n, dims.d, where);
        terms.push_back({std::move(id), WeylLabel(dims.d, std::move(x), std::move(z), phase2), coeff});
        ++idx;
    }
    return Hamiltonian(dims, std::move(terms));
}

inline Hamiltonian parse_hamiltonian(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_hamiltonian(j);
}

inline Hamiltonian parse_hamiltonian(const char* text) { return parse_hamiltonian(std::string(text)); }

inline json emit_hamiltonian(const Hamiltonian& h) {
    json terms = json::array();
    for (const auto& t : h.terms())
        terms.push_back({{"id", t.id}, {"coeff", t.coeff}, {"phase2", t.label.phase2}, {"x", t.label.x}, {"z", t.label.z}});
    return {{"d", h.dims().d}, {"n", h.dims().n}, {"terms", std::move(terms)}};
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

/// digraph with every vertex listed in order, then arcs in index order.
inline std::string to_dot(const OrientedGraph& g) {
    std::ostringstream os;
    os << "digraph {\n";
    for (const auto& id : g.ids()) os << "  " << detail::dot_quote(id) << ";\n";
    for (auto [u, v] : g.arcs()) os << "  " << detail::dot_quote(g.id(u)) << " -> " << detail::dot_quote(g.id(v)) << ";\n";
    os << "}\n";
    return os.str();
}

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json complex_list_json(const std::vector<cplx>& v) {
    json out = json::array();
    for (auto z : v) out.push_back(complex_json(z));
    return out;
}

inline json ids_json(const OrientedGraph& g, const std::vector<std::size_t>& idx) {
    json out = json::array();
    for (auto i : idx) out.push_back(g.id(i));
    return out;
}

inline json to_json(const CheckReport& r) {
    return {{"name", r.name}, {"pass", r.pass}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"details", r.details}};
}

inline json to_json(const IndependencePolynomial& z) { return json(z.coeffs); }

inline json to_json(const SwitchingSolution& s, const OrientedGraph& g) {
    json cert = json::array();
    for (const auto& e : s.certificate) cert.push_back({{"path", ids_json(g, {e.u, e.v, e.w})}, {"rhs", e.rhs ? 1 : 0}});
    return {{"feasible", s.feasible}, {"switch_set", s.feasible ? ids_json(g, s.switch_set) : json::array()},
            {"certificate", cert}, {"equations", s.equation_count}, {"free_variables", s.free_variables}};
}

inline json to_json(const EliminationOrdering& o, const OrientedGraph& g) {
    return {{"ordering", ids_json(g, o.order)}, {"kind", to_string(o.kind)}, {"strategy", o.strategy}};
}

inline json to_json(const SingleParticleEnergies& e) {
    return {{"d", e.d}, {"eps", complex_list_json(e.values())}, {"roots", complex_list_json(e.roots)},
            {"root_residuals", e.root_residuals},
            {"min_root_gap", std::isfinite(e.min_root_gap) ? json(e.min_root_gap) : json(nullptr)},
            {"degenerate", e.degenerate}};
}

inline json to_json(const PredictedSpectrum& p) {
    return {{"d", p.d}, {"alpha", p.alpha}, {"truncated", p.truncated}, {"count", p.energies.size()},
            {"energies", complex_list_json(p.energies)}};
}

struct AnalysisReport {
    bool admissible = false;
    std::vector<AdmissibilityViolation> violations;
    std::optional<OrientedGraph> graph;
    bool dipath_oriented = false;
    std::optional<std::array<std::size_t, 3>> dipath_witness;
    bool claw_free = false;
    bool chordal = false;
    SwitchingSolution switching;
    std::optional<EliminationOrdering> oriented_indifference;
    std::optional<EliminationOrdering> oriented_peo;
    std::size_t alpha = 0;
    IndependencePolynomial indpoly;
    std::optional<std::string> weights_error;
    std::optional<SingleParticleEnergies> energies;
};

/// Structural analysis; energies only when the graph is oriented indifference.
inline AnalysisReport analyze(const Hamiltonian& h) {
    AnalysisReport r;
    r.violations = check_admissible(h);
    r.admissible = r.violations.empty();
    if (!r.admissible) return r;
    r.graph = build_frustration_graph(h);
    const auto& g = *r.graph;
    const auto dp = is_dipath_oriented(g);
    r.dipath_oriented = dp.dipath_oriented;
    if (!dp.dipath_oriented) r.dipath_witness = dp.witness;
    r.claw_free = is_claw_free(g).claw_free;
    r.chordal = perfect_elimination_ordering(g).has_value();
    r.switching = switching_solve(g);
    r.oriented_indifference = is_oriented_indifference(g);
    r.oriented_peo = oriented_peo(g);
    r.alpha = independence_number(g);
    try {
        r.indpoly = independence_polynomial(g, weights_for_spectrum(h));
    } catch (const UnsupportedError& e) {
        r.weights_error = e.what();
        return r;
    }
    if (r.oriented_indifference && r.indpoly.degree() >= 1) r.energies = single_particle_energies(r.indpoly, h.dims().d);
    return r;
}

inline json to_json(const AnalysisReport& r, const Hamiltonian& h) {
    json out;
    out["d"] = h.dims().d;
    out["n"] = h.dims().n;
    out["terms"] = h.size();
    out["admissible"] = r.admissible;
    json viol = json::array();
    for (const auto& v : r.violations) viol.push_back({{"u", h.term(v.u).id}, {"v", h.term(v.v).id}, {"phase", v.phase}});
    out["violations"] = viol;
    if (!r.graph) return out;
    const auto& g = *r.graph;
    json arcs = json::array();
    for (auto [u, v] : g.arcs()) arcs.push_back({g.id(u), g.id(v)});
    out["graph"] = {{"vertices", g.ids()}, {"arcs", arcs}};
    out["dipath_oriented"] = r.dipath_oriented;
    out["dipath_witness"] = r.dipath_witness ? ids_json(g, {(*r.dipath_witness)[0], (*r.dipath_witness)[1], (*r.dipath_witness)[2]})
                                             : json(nullptr);
    out["claw_free"] = r.claw_free;
    out["chordal"] = r.chordal;
    out["switching"] = to_json(r.switching, g);
    out["oriented_indifference"] = r.oriented_indifference ? to_json(*r.oriented_indifference, g) : json(nullptr);
    out["oriented_peo"] = r.oriented_peo ? to_json(*r.oriented_peo, g) : json(nullptr);
    out["alpha"] = r.alpha;
    out["indpoly"] = r.weights_error ? json(nullptr) : to_json(r.indpoly);
    if (r.weights_error) out["weights_error"] = *r.weights_error;
    out["energies"] = r.energies ? to_json(*r.energies) : json(nullptr);
    return out;
}

}  // namespace pfsolve
