#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cpa2relu/evaluate.hpp"
#include "cpa2relu/network.hpp"
#include "cpa2relu/sparsify.hpp"

namespace cpa2relu {

struct StageFailure {
    Point point;
    Rat cpa;
    Rat decomposition;
    Rat terms;
    std::optional<Rat> network;
    std::string stage;  // earliest stage differing from cpa
};

struct IdentityStats {
    std::string piece;
    std::size_t passed = 0;
    std::size_t total = 0;
};

struct EulerCheck {
    std::size_t v = 0;
    std::size_t e = 0;
    std::size_t p = 0;
    bool ok = false;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<StageFailure> failures;
    std::vector<IdentityStats> identity_stats;
    std::optional<EulerCheck> euler;
    std::optional<NetworkStats> bounds;

    bool identity_ok() const {
        for (const auto& s : identity_stats)
            if (s.passed != s.total) return false;
        return true;
    }

    bool certified() const {
        return samples > 0 && failures.empty() && identity_ok() && (!euler || euler->ok) && (!bounds || bounds->bounds_ok);
    }
};

/// Compares f, the decomposition, the term sum and (when given) the network
/// at n general-position points of the source instance.
inline VerifyReport verify_equivalence(const Instance& inst, const Decomposition& dec, const TermList& terms,
                                       const ReluNetwork* net, std::size_t n, std::uint64_t seed,
                                       bool stop_at_first_failure = false) {
    VerifyReport report;
    report.seed = seed;
    report.samples = n;
    if (n == 0) return report;
    for (const auto& x : sample_general_position(inst, seed, n)) {
        StageFailure f{x, eval_cpa(inst, x, seed), eval_decomposition(dec, x), eval_terms(terms, x), std::nullopt, {}};
        if (net) f.network = eval_network_exact(*net, x);
        if (f.decomposition != f.cpa) f.stage = "decomposition";
        else if (f.terms != f.cpa) f.stage = "terms";
        else if (f.network && *f.network != f.cpa) f.stage = "network";
        if (!f.stage.empty()) {
            report.failures.push_back(std::move(f));
            if (stop_at_first_failure) break;
        }
    }
    return report;
}

/// V - E + P for instances made only of segments whose graph is connected;
/// nullopt when that does not apply.
inline std::optional<EulerCheck> euler_diagnostic(const Instance& inst) {
    if (inst.edges.empty() || inst.count_edges(EdgeKind::Segment) != inst.edges.size()) return std::nullopt;
    std::vector<std::size_t> parent(inst.vertices.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : inst.edges) parent[root(*e.from)] = root(*e.to);
    for (std::size_t v = 0; v < inst.vertices.size(); ++v)
        if (root(v) != root(0)) return std::nullopt;
    EulerCheck c{inst.vertices.size(), inst.edges.size(), inst.pieces.size(), false};
    c.ok = static_cast<long>(c.v) - static_cast<long>(c.e) + static_cast<long>(c.p) == 2;
    return c;
}

/// Indicator identity for every piece at n points, plus the Euler diagnostic.
inline VerifyReport verify_lemma_suite(const Instance& inst, std::size_t n, std::uint64_t seed) {
    VerifyReport report;
    report.seed = seed;
    report.samples = n;
    const ConicSides sides(inst, seed);
    const auto points = sample_general_position(inst, seed, n);
    for (std::size_t p = 0; p < inst.pieces.size(); ++p) {
        IdentityStats s{inst.pieces[p].id, 0, points.size()};
        for (const auto& x : points) s.passed += sides.indicator_identity_check(p, x).ok ? 1 : 0;
        report.identity_stats.push_back(s);
    }
    report.euler = euler_diagnostic(inst);
    return report;
}

enum class MutationKind { FlipSign, PerturbWeight, DropTerm };

inline std::string_view to_string(MutationKind k) {
    switch (k) {
    case MutationKind::FlipSign: return "flip_sign";
    case MutationKind::PerturbWeight: return "perturb_weight";
    case MutationKind::DropTerm: return "drop_term";
    }
    return "?";
}

struct Mutant {
    TermList terms;
    std::optional<ReluNetwork> net;
    std::string description;
};

/// A seeded single mutation of a compiled pipeline. Term mutations rebuild
/// the network; a weight perturbation adds 1 to one stored weight.
inline Mutant mutate(const TermList& terms, const ReluNetwork& net, MutationKind kind, std::uint64_t seed) {
    Rng rng(seed);
    Mutant m{terms, net, {}};
    switch (kind) {
    case MutationKind::FlipSign: {
        const std::size_t t = rng.below(terms.terms.size());
        const bool outer = rng.below(2) == 0;
        int& s = outer ? m.terms.terms[t].sigma1 : m.terms.terms[t].sigma2;
        s = -s;
        m.description = std::string(outer ? "sigma1" : "sigma2") + " of term " + std::to_string(t);
        break;
    }
    case MutationKind::DropTerm: {
        const std::size_t t = rng.below(terms.terms.size());
        m.terms.terms.erase(m.terms.terms.begin() + static_cast<std::ptrdiff_t>(t));
        m.description = "term " + std::to_string(t);
        break;
    }
    case MutationKind::PerturbWeight: {
        std::size_t total = 0;
        for (const auto& l : net.layers) total += l.weights.size();
        std::size_t k = rng.below(total);
        for (std::size_t i = 0; i < m.net->layers.size(); ++i) {
            auto& ws = m.net->layers[i].weights;
            if (k < ws.size()) {
                ws[k].value += 1;
                m.description = "layer " + std::to_string(i) + " weight (" + std::to_string(ws[k].row) + ", " +
                                std::to_string(ws[k].col) + ")";
                break;
            }
            k -= ws.size();
        }
        return m;
    }
    }
    m.net = m.terms.terms.empty() ? std::nullopt : std::optional<ReluNetwork>(build_network(m.terms));
    return m;
}

inline json verify_report_to_json(const VerifyReport& r) {
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"point", point_to_json(f.point)},
                            {"stage", f.stage},
                            {"cpa", rat_to_json(f.cpa)},
                            {"decomposition", rat_to_json(f.decomposition)},
                            {"terms", rat_to_json(f.terms)},
                            {"network", f.network ? rat_to_json(*f.network) : json(nullptr)}});
    json ids = json::array();
    for (const auto& s : r.identity_stats) ids.push_back({{"piece", s.piece}, {"passed", s.passed}, {"total", s.total}});
    json out{{"seed", r.seed}, {"samples", r.samples}, {"failures", failures}, {"identity_stats", ids},
             {"certified", r.certified()}};
    out["euler"] = r.euler ? json{{"V", r.euler->v}, {"E", r.euler->e}, {"P", r.euler->p}, {"ok", r.euler->ok}} : json(nullptr);
    out["bounds"] = r.bounds ? stats_to_json(*r.bounds) : json(nullptr);
    return out;
}

} // namespace cpa2relu
