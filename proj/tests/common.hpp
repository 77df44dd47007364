#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpa2relu/cpa2relu.hpp"

namespace testing_support {

using namespace cpa2relu;

inline std::string corpus_path(const std::string& name) { return std::string(CORPUS_DIR) + "/" + name + ".json"; }

inline Instance load(const std::string& name) {
    std::ifstream in(corpus_path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

/// Corpus instance names, sorted.
inline std::vector<std::string> corpus_names() {
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(CORPUS_DIR))
        if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

template <typename T>
std::size_t index_of(const std::vector<T>& items, const std::string& id) {
    for (std::size_t i = 0; i < items.size(); ++i)
        if (items[i].id == id) return i;
    throw std::runtime_error("no item " + id);
}

inline std::size_t piece_index(const Instance& inst, const std::string& id) { return index_of(inst.pieces, id); }
inline std::size_t vertex_index(const Instance& inst, const std::string& id) { return index_of(inst.vertices, id); }
inline std::size_t edge_index(const Instance& inst, const std::string& id) { return index_of(inst.edges, id); }

inline Point P(long x, long y) { return {Rat(x), Rat(y)}; }
inline Point P(const std::string& x, const std::string& y) { return {parse_rat(x), parse_rat(y)}; }
inline Point P(long x, const std::string& y) { return {Rat(x), parse_rat(y)}; }
inline Point P(const std::string& x, long y) { return {parse_rat(x), Rat(y)}; }
inline Vec D(long x, long y) { return {Rat(x), Rat(y)}; }
inline AffineFunc A(long a, long b, long c) { return {Rat(a), Rat(b), Rat(c)}; }

inline Rat rmax(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat rmin(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rabs(const Rat& a) { return sign(a) < 0 ? Rat(-a) : a; }

/// Random rational points in [-r, r]^2 with random denominators.
inline std::vector<Point> random_points(std::uint64_t seed, std::size_t n, long r = 6) {
    Rng rng(seed);
    std::vector<Point> out;
    const Box box{Rat(-r), Rat(r), Rat(-r), Rat(r)};
    for (std::size_t i = 0; i < n; ++i) out.push_back(rng.in_box(box, 1 + rng.below(997)));
    return out;
}

} // namespace testing_support
