#pragma once

// Command-line driver. Exit codes: 0 success, 1 invalid input or failed
// verification, 2 usage error.

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpa2relu/generator.hpp"
#include "cpa2relu/instance_io.hpp"
#include "cpa2relu/pipeline.hpp"
#include "cpa2relu/render.hpp"
#include "cpa2relu/verify.hpp"

namespace cpa2relu::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

inline json parse_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
    }
}

inline Instance load_instance(const std::string& path) { return parse_instance(parse_json_file(path)); }

inline bool report_validation(const ValidationReport& rep, std::ostream& out) {
    for (const auto& c : rep.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
        for (const auto& f : c.failures) out << "  " << f << '\n';
    }
    return rep.ok();
}

/// Validates and prints failures; false when the instance is not admissible.
inline bool require_valid(const Instance& inst, std::uint64_t seed, std::ostream& err) {
    ValidateOptions opts;
    opts.seed = seed;
    const ValidationReport rep = validate(inst, opts);
    if (rep.ok()) return true;
    std::ostringstream os;
    report_validation(rep, os);
    err << "instance is not valid:\n" << os.str();
    return false;
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compile continuous piecewise affine functions on the plane into exact ReLU networks", "cpa2relu"};
    app.require_subcommand(1);

    std::string input, output, net_path, mode = "exact", json_path;
    std::uint64_t seed = 0;
    std::size_t samples = 1000, cover = 256, pieces = 0, grid = 3;
    std::vector<std::string> point;

    auto add_seed = [&](CLI::App* c) { c->add_option("--seed", seed, "Random seed")->capture_default_str(); };
    auto add_in = [&](CLI::App* c) { c->add_option("input", input, "Instance JSON")->required()->check(CLI::ExistingFile); };
    auto add_out = [&](CLI::App* c) { c->add_option("-o,--output", output, "Output path (default stdout)"); };

    auto* validate_cmd = app.add_subcommand("validate", "Check admissibility of an instance");
    add_in(validate_cmd);
    add_seed(validate_cmd);
    validate_cmd->add_option("--cover-samples", cover, "Sample points for the cover check")->capture_default_str();

    auto* sparsify_cmd = app.add_subcommand("sparsify", "Remove degree-2 vertices");
    add_in(sparsify_cmd);
    add_out(sparsify_cmd);
    add_seed(sparsify_cmd);

    auto* decompose_cmd = app.add_subcommand("decompose", "Dump vertex fans, edge pairs and tail");
    add_in(decompose_cmd);
    add_out(decompose_cmd);
    add_seed(decompose_cmd);

    auto* reduce_cmd = app.add_subcommand("reduce", "Dump the nested-max term list");
    add_in(reduce_cmd);
    add_out(reduce_cmd);
    add_seed(reduce_cmd);

    auto* compile_cmd = app.add_subcommand("compile", "Compile an instance into a ReLU network");
    add_in(compile_cmd);
    add_out(compile_cmd);
    add_seed(compile_cmd);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a network at a point");
    eval_cmd->add_option("network", net_path, "Network JSON")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--point", point, "x y")->required()->expected(2)->allow_extra_args(false);
    eval_cmd->add_option("--mode", mode, "exact or f64")->check(CLI::IsMember({"exact", "f64"}))->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "Certify that every stage agrees with the instance");
    add_in(verify_cmd);
    add_seed(verify_cmd);
    verify_cmd->add_option("--net", net_path, "Network JSON to check instead of a fresh build")->check(CLI::ExistingFile);
    verify_cmd->add_option("--samples", samples, "Sample points")->capture_default_str();
    verify_cmd->add_option("--json", json_path, "Write the full report here");

    auto* stats_cmd = app.add_subcommand("stats", "Widths and parameter counts of a network");
    stats_cmd->add_option("network", net_path, "Network JSON")->required()->check(CLI::ExistingFile);
    stats_cmd->add_option("--pieces", pieces, "Piece count p for the bounds")->required();

    auto* render_cmd = app.add_subcommand("render", "Draw the subdivision as SVG");
    add_in(render_cmd);
    add_out(render_cmd);

    auto* generate_cmd = app.add_subcommand("generate", "Random jittered-grid instance");
    generate_cmd->add_option("--grid", grid, "Cells per side")->capture_default_str()->check(CLI::Range(1, 64));
    add_out(generate_cmd);
    add_seed(generate_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (validate_cmd->parsed()) {
            ValidateOptions opts;
            opts.seed = seed;
            opts.cover_samples = cover;
            return detail::report_validation(validate(detail::load_instance(input), opts), out) ? kOk : kFailed;
        }
        if (sparsify_cmd->parsed()) {
            const Instance inst = detail::load_instance(input);
            if (!detail::require_valid(inst, seed, err)) return kFailed;
            detail::emit(output, serialize_instance(sparsify(inst, seed)).dump(1) + "\n", out);
            return kOk;
        }
        if (decompose_cmd->parsed() || reduce_cmd->parsed() || compile_cmd->parsed()) {
            const Instance inst = detail::load_instance(input);
            if (!detail::require_valid(inst, seed, err)) return kFailed;
            const Compiled c = compile(inst, seed);
            json doc;
            if (decompose_cmd->parsed()) doc = decomposition_to_json(c.dec);
            else if (reduce_cmd->parsed()) doc = terms_to_json(c.terms);
            else doc = export_network(c.net);
            detail::emit(output, doc.dump(1) + "\n", out);
            return kOk;
        }
        if (eval_cmd->parsed()) {
            const ReluNetwork net = import_network(detail::parse_json_file(net_path));
            const Point x{parse_rat(point[0]), parse_rat(point[1])};
            if (mode == "exact") out << to_string(eval_network_exact(net, x)) << '\n';
            else out << std::setprecision(17) << eval_network_f64(net, x.x.get_d(), x.y.get_d()) << '\n';
            return kOk;
        }
        if (verify_cmd->parsed()) {
            const Instance inst = detail::load_instance(input);
            if (!detail::require_valid(inst, seed, err)) return kFailed;
            const Compiled c = compile(inst, seed);
            const ReluNetwork net = net_path.empty() ? c.net : import_network(detail::parse_json_file(net_path));
            VerifyReport rep = verify_equivalence(inst, c.dec, c.terms, &net, samples, seed);
            const VerifyReport lemmas = verify_lemma_suite(inst, samples, seed);
            rep.identity_stats = lemmas.identity_stats;
            rep.euler = lemmas.euler;
            rep.bounds = stats(net, c.sparse.piece_count());
            const std::size_t id_pass = std::count_if(rep.identity_stats.begin(), rep.identity_stats.end(),
                                                      [](const IdentityStats& s) { return s.passed == s.total; });
            out << "pieces            " << inst.piece_count() << " (" << c.sparse.piece_count() << " after sparsify)\n"
                << "terms             " << c.terms.terms.size() << '\n'
                << "widths            " << rep.bounds->s1 << ", " << rep.bounds->s2 << '\n'
                << "nonzeros          " << rep.bounds->nnz << '\n'
                << "bounds            " << (rep.bounds->bounds_ok ? "ok" : "VIOLATED") << '\n'
                << "identity          " << id_pass << '/' << rep.identity_stats.size() << " pieces\n"
                << "euler             "
                << (rep.euler ? (rep.euler->ok ? "ok" : "VIOLATED") : "not applicable") << '\n'
                << "samples           " << rep.samples << " (seed " << rep.seed << ")\n";
            for (const auto& f : rep.failures)
                out << "  diverges at (" << to_string(f.point.x) << ", " << to_string(f.point.y) << ") in " << f.stage
                    << ": f=" << to_string(f.cpa) << " dec=" << to_string(f.decomposition) << " terms=" << to_string(f.terms)
                    << " net=" << (f.network ? to_string(*f.network) : "-") << '\n';
            out << rep.failures.size() << " failures\n";
            if (!json_path.empty()) detail::emit(json_path, verify_report_to_json(rep).dump(1) + "\n", out);
            return rep.certified() ? kOk : kFailed;
        }
        if (stats_cmd->parsed()) {
            const NetworkStats s = stats(import_network(detail::parse_json_file(net_path)), pieces);
            out << stats_to_json(s).dump(1) << '\n';
            return s.bounds_ok ? kOk : kFailed;
        }
        if (render_cmd->parsed()) {
            detail::emit(output, render_svg(detail::load_instance(input)), out);
            return kOk;
        }
        if (generate_cmd->parsed()) {
            GridOptions opts;
            opts.n = grid;
            opts.seed = seed;
            detail::emit(output, serialize_instance(generate_grid(opts)).dump(1) + "\n", out);
            return kOk;
        }
    } catch (const Error& e) {
        err << to_string(e.code()) << ": " << e.what() << '\n';
        return kFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}

} // namespace cpa2relu::cli
