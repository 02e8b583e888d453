#pragma once

// Command-line front end. run_command parses argv, runs one subcommand and
// returns the report plus the exit code; main() only prints.
//
// Exit codes: 0 ok, 1 invalid argument, 2 parse error (input file or argv),
// 3 guard exceeded, 4 verification failure.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "altiso/altspace.hpp"
#include "altiso/bipartite.hpp"
#include "altiso/decomposition.hpp"
#include "altiso/errors.hpp"
#include "altiso/gadgets.hpp"
#include "altiso/graph.hpp"
#include "altiso/io.hpp"
#include "altiso/iso_exact.hpp"
#include "altiso/quantum.hpp"
#include "altiso/random.hpp"

namespace altiso::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { Ok = 0, InvalidArgument = 1, ParseFailure = 2, GuardFailure = 3, VerificationFailure = 4 };

struct Report {
    json doc;
    int exit_code = Ok;
    std::string out;  ///< what main() writes to stdout
    std::string err;  ///< what main() writes to stderr
};

// ---------------------------------------------------------------------------
// Serialization

inline json to_json(const Subspace& s) {
    json rows = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        json r = json::array();
        for (Elem x : s.basis_vector(i)) r.push_back(unsigned(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json to_json(const std::vector<Subspace>& parts) {
    json a = json::array();
    for (const auto& p : parts) a.push_back(to_json(p));
    return a;
}

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(unsigned(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json to_json(const Vec& v) {
    json a = json::array();
    for (Elem x : v) a.push_back(unsigned(x));
    return a;
}

/// 1-based vertex lists.
inline json vertices_json(const VertexSet& s) {
    json a = json::array();
    for (auto v : s) a.push_back(v + 1);
    return a;
}

inline std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream s;
    s << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return s.str();
}

inline Subspace subspace_from_json(const PrimeField& f, std::size_t n, const json& rows) {
    std::vector<Vec> vs;
    for (const auto& r : rows) {
        Vec v;
        for (const auto& x : r) v.push_back(f.reduce(x.get<long long>()));
        vs.push_back(std::move(v));
    }
    return Subspace::span(f, n, vs);
}

/// Plain-text rendering: one "key: value" line per result.
inline std::string render_text(const json& doc) {
    std::ostringstream out;
    out << "command: " << doc["command"].get<std::string>() << '\n';
    for (const auto& [k, v] : doc["results"].items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Dispatch

namespace detail {

struct Context {
    std::string space_file, graph_file, matrix_file;
    json inputs = json::object();

    std::string load(const std::string& path, const char* key) {
        std::string bytes = io::detail::read_file(path);
        inputs[key] = {{"path", path}, {"digest", fnv1a64(bytes)}};
        return bytes;
    }
    AltSpace space() {
        if (space_file.empty()) throw std::invalid_argument("this command needs --file (an ams space)");
        return io::parse_space_text(load(space_file, "space"));
    }
    Graph graph() {
        if (graph_file.empty()) throw std::invalid_argument("this command needs --graph (a graph file)");
        return io::parse_graph_text(load(graph_file, "graph"));
    }
    io::MatrixTuple matrices() {
        if (matrix_file.empty()) throw std::invalid_argument("this command needs --matrices (a mat file)");
        return io::parse_matrices_text(load(matrix_file, "matrices"));
    }
};

/// Coordinate splitting F^s ⊕ F^(n-s).
inline std::pair<Subspace, Subspace> coordinate_split(const PrimeField& f, std::size_t n, std::size_t s) {
    if (s > n) throw std::invalid_argument("--split exceeds n");
    std::vector<Vec> a, b;
    for (std::size_t i = 0; i < n; ++i) (i < s ? a : b).push_back(unit_vector(n, i));
    return {Subspace::span(f, n, a), Subspace::span(f, n, b)};
}

inline void require_verified(bool ok, const std::string& what) {
    if (!ok) throw VerificationError(what);
}

}  // namespace detail

inline Report run_command(const std::vector<std::string>& argv) {
    Report rep;
    CLI::App app{"Exact algorithms for alternating matrix spaces", "altiso"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0, guard_limit = Guard{}.limit;
    unsigned field_p = 2;
    bool as_json = false;
    detail::Context ctx;
    app.add_option("--seed", seed, "Seed for the random generator");
    app.add_option("--guard", guard_limit, "Step limit for exponential enumerations");
    app.add_option("--field", field_p, "Prime field size for commands that build spaces");
    app.add_flag("--json", as_json, "Print the report as JSON");

    auto with_space = [&](CLI::App* c) { c->add_option("-f,--file", ctx.space_file, "Alternating space (ams)")->required(); };
    auto with_graph = [&](CLI::App* c) { c->add_option("-g,--graph", ctx.graph_file, "Graph file")->required(); };

    std::string alpha_method = "lattice", chi_method = "maxcover", maximal_method = "branch", decompose_method = "greedy-deg";
    bool list = false, pad = false, find_hyperbolic = false, verify = false, normalize = false;
    std::size_t split = 0, gen_n = 4, gen_m = 2, gen_s = 2, gen_t = 2;
    std::string what = "independent-set", mode, kind, gen_kind;
    std::vector<double> vector_re;
    std::vector<std::size_t> count_args;

    auto* c_alpha = app.add_subcommand("alpha", "Maximum isotropic dimension with a witness");
    with_space(c_alpha);
    c_alpha->add_option("--method", alpha_method)->check(CLI::IsMember({"lattice"}))->capture_default_str();

    auto* c_chi = app.add_subcommand("chi", "Least isotropic decomposition size with a certificate");
    with_space(c_chi);
    c_chi->add_option("--method", chi_method)->check(CLI::IsMember({"brute", "lawler", "maxcover"}))->capture_default_str();

    auto* c_max = app.add_subcommand("maximal", "Enumerate maximal isotropic spaces");
    with_space(c_max);
    c_max->add_option("--method", maximal_method)->check(CLI::IsMember({"filter", "branch"}))->capture_default_str();
    c_max->add_flag("--list", list, "List every space");

    auto* c_dec = app.add_subcommand("decompose", "Isotropic decomposition");
    with_space(c_dec);
    c_dec->add_option("--method", decompose_method)->check(CLI::IsMember({"greedy-deg", "lawler"}))->capture_default_str();

    auto* c_fg = app.add_subcommand("from-graph", "Emit the alternating space of a graph");
    with_graph(c_fg);

    auto* c_tgw = app.add_subcommand("to-graph-witness", "Recover an independent set or coloring from isotropic data");
    with_graph(c_tgw);
    c_tgw->add_option("--what", what)->check(CLI::IsMember({"independent-set", "coloring"}))->capture_default_str();

    auto* c_ncrk = app.add_subcommand("ncrk", "Non-commutative rank by brute force");
    c_ncrk->add_option("-m,--matrices", ctx.matrix_file, "Matrix tuple (mat)");
    c_ncrk->add_option("-f,--file", ctx.space_file, "Bipartite alternating space (ams), with --split");
    c_ncrk->add_option("--split", split, "Size s of the first coordinate block");
    c_ncrk->add_flag("--pad", pad, "Also compute ncrk of the square padding");

    auto* c_ab = app.add_subcommand("alpha-bipartite", "α of a bipartite space as n - ncrk");
    with_space(c_ab);
    c_ab->add_option("--split", split, "Size s of the first coordinate block")->required();

    auto* c_adj = app.add_subcommand("adjoint", "Adjoint algebra of the nondegenerate part");
    with_space(c_adj);
    c_adj->add_flag("--find-hyperbolic", find_hyperbolic, "Search for a hyperbolic idempotent");

    auto* c_d2 = app.add_subcommand("dim2", "Decide whether a 2-dimensional isotropic space exists");
    with_space(c_d2);

    auto* c_g2 = app.add_subcommand("gadget-dim2", "Right degree versus the dimension-2 gadget");
    c_g2->add_option("-m,--matrices", ctx.matrix_file, "Tuple of n matrices of shape n x m")->required();

    auto* c_se = app.add_subcommand("singular-exists", "Nonzero singular matrix in a square matrix space");
    c_se->add_option("-m,--matrices", ctx.matrix_file, "Square matrix tuple (mat)")->required();

    auto* c_baer = app.add_subcommand("baer", "Baer matrix group of an alternating tuple (p odd)");
    with_space(c_baer);
    c_baer->add_flag("--verify", verify, "Check abelian subgroup orders against α");

    auto* c_q = app.add_subcommand("quantum", "Graph channel: period, 2-decomposition, fidelity");
    c_q->add_option("mode", mode)->check(CLI::IsMember({"period", "decide2", "fidelity"}))->required();
    with_graph(c_q);
    c_q->add_option("--vector", vector_re, "Real entries of u for fidelity");
    c_q->add_flag("--normalize", normalize, "Scale --vector to unit length");

    auto* c_count = app.add_subcommand("count", "Gaussian binomials and isotropic counts");
    c_count->add_option("kind", kind)->check(CLI::IsMember({"gaussian", "iso-formula"}))->required();
    c_count->add_option("args", count_args, "n d q")->expected(3)->required();

    auto* c_stats = app.add_subcommand("stats", "Radical, degrees, Δ and max rank");
    with_space(c_stats);

    auto* c_gen = app.add_subcommand("gen", "Seeded random instance in file format");
    c_gen->add_option("kind", gen_kind)->check(CLI::IsMember({"space", "graph", "connected-graph", "matrices"}))->required();
    c_gen->add_option("--n", gen_n, "Ambient dimension or vertex count");
    c_gen->add_option("--m", gen_m, "Number of random generators");
    c_gen->add_option("--s", gen_s, "Rows of each matrix");
    c_gen->add_option("--t", gen_t, "Columns of each matrix");

    json& doc = rep.doc;
    auto fail = [&](int code, const std::string& kind_name, const std::string& msg) {
        rep.exit_code = code;
        doc["error"] = {{"kind", kind_name}, {"message", msg}};
        rep.err = "error (" + kind_name + "): " + msg + "\n";
        if (as_json) rep.out = doc.dump(2) + "\n";
        return rep;
    };

    std::vector<std::string> args(argv.begin(), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        rep.out = app.help();
        return rep;
    } catch (const CLI::ParseError& e) {
        doc["command"] = "";
        return fail(ParseFailure, "usage", e.what());
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    doc["command"] = name;
    doc["inputs"] = json::object();
    doc["seed"] = seed;
    doc["guard"] = {{"limit", guard_limit}};
    doc["results"] = json::object();
    json& res = doc["results"];
    const Guard guard{guard_limit};
    const auto start = std::chrono::steady_clock::now();
    bool raw_output = false;  // text mode prints res["text"] verbatim

    try {
        if (name == "alpha") {
            AltSpace a = ctx.space();
            AlphaResult r = alpha_exact(a, guard);
            res["method"] = alpha_method;
            res["alpha"] = r.alpha;
            res["witness"] = to_json(r.witness);
        } else if (name == "chi") {
            AltSpace a = ctx.space();
            ChiResult r = chi_method == "brute" ? chi_brute(a, guard) : chi_method == "lawler" ? chi_lawler(a, guard) : chi_maxcover(a, guard);
            res["method"] = chi_method;
            res["chi"] = r.chi;
            res["certificate"] = to_json(r.certificate.parts);
        } else if (name == "maximal") {
            AltSpace a = ctx.space();
            std::vector<Subspace> m = maximal_method == "filter" ? enumerate_maximal_filter(a, guard) : enumerate_maximal_branch(a, guard);
            for (const auto& u : m) detail::require_verified(is_maximal_isotropic(a, u), "enumerated space is not maximal isotropic");
            std::size_t lo = a.n(), hi = 0;
            for (const auto& u : m) {
                lo = std::min(lo, u.dim());
                hi = std::max(hi, u.dim());
            }
            res["method"] = maximal_method;
            res["count"] = m.size();
            res["min_dim"] = lo;
            res["max_dim"] = hi;
            if (list) res["spaces"] = to_json(m);
        } else if (name == "decompose") {
            AltSpace a = ctx.space();
            res["method"] = decompose_method;
            if (decompose_method == "greedy-deg") {
                DecompositionCertificate c = greedy_deg_decomposition(a);
                std::size_t delta = max_degree(a, guard);
                res["parts"] = c.size();
                res["max_degree"] = delta;
                res["part_bound"] = greedy_part_bound(a.n(), delta);
                res["certificate"] = to_json(c.parts);
            } else {
                ChiResult r = chi_lawler(a, guard);
                res["parts"] = r.chi;
                res["certificate"] = to_json(r.certificate.parts);
            }
        } else if (name == "from-graph") {
            Graph g = ctx.graph();
            std::string text = io::emit_space(space_from_graph(g, PrimeField(field_p)));
            res["field"] = field_p;
            res["text"] = text;
            raw_output = true;
        } else if (name == "to-graph-witness") {
            Graph g = ctx.graph();
            PrimeField f(field_p);
            AltSpace a = space_from_graph(g, f);
            res["what"] = what;
            if (what == "independent-set") {
                AlphaResult r = alpha_exact(a, guard);
                VertexSet s = independent_set_from_isotropic(g, r.witness);
                res["alpha"] = r.alpha;
                res["isotropic"] = to_json(r.witness);
                res["independent_set"] = vertices_json(s);
            } else {
                ChiResult r = chi_maxcover(a, guard);
                auto blocks = coloring_from_decomposition(g, r.certificate.parts, guard);
                json cls = json::array();
                for (const auto& b : blocks) cls.push_back(vertices_json(b));
                res["chi"] = r.chi;
                res["certificate"] = to_json(r.certificate.parts);
                res["coloring"] = cls;
            }
        } else if (name == "ncrk") {
            MatrixSpace b;
            if (!ctx.matrix_file.empty()) {
                io::MatrixTuple t = ctx.matrices();
                b = MatrixSpace::span_of(t.field, t.rows, t.cols, t.matrices);
            } else {
                AltSpace a = ctx.space();
                auto [u1, u2] = detail::coordinate_split(a.field(), a.n(), split);
                b = block_space_from_bipartite(a, u1, u2);
            }
            NcrkResult r = ncrk_brute_pair(b, guard);
            res["s"] = b.s();
            res["t"] = b.t();
            res["dim"] = b.dim();
            res["ncrk"] = r.ncrk;
            res["pair_u"] = to_json(r.pair.u);
            res["pair_v"] = to_json(r.pair.v);
            if (pad) {
                if (b.s() >= b.t()) throw std::invalid_argument("--pad requires s < t");
                std::size_t padded = ncrk_brute(ncrk_pad_square(b), guard);
                res["ncrk_padded"] = padded;
                res["padding_identity_holds"] = padded == r.ncrk + (b.t() - b.s());
            }
        } else if (name == "alpha-bipartite") {
            AltSpace a = ctx.space();
            auto [u1, u2] = detail::coordinate_split(a.field(), a.n(), split);
            auto [alpha, w] = alpha_bipartite(a, u1, u2, guard);
            res["alpha"] = alpha;
            res["witness"] = to_json(w);
        } else if (name == "adjoint") {
            AltSpace a = ctx.space();
            NondegeneratePart np = nondegenerate_part(a);
            res["radical_dim"] = np.radical.dim();
            if (np.space.n() == 0) {
                res["adjoint_dim"] = 0;
            } else {
                AdjointAlgebra adj = adjoint_algebra(np.space);
                res["adjoint_dim"] = adj.dim();
                if (find_hyperbolic) {
                    auto p = hyperbolic_idempotent_search(adj, a.field(), guard);
                    res["hyperbolic_found"] = p.has_value();
                    if (p) res["idempotent"] = to_json(*p);
                }
            }
            if (find_hyperbolic) {
                auto d = two_decomposition_via_adjoint(a, guard);
                res["two_decomposition"] = d ? to_json(std::vector<Subspace>{d->first, d->second}) : json(nullptr);
            }
        } else if (name == "dim2") {
            AltSpace a = ctx.space();
            auto w = has_isotropic_dim2(a, guard);
            res["exists"] = w.has_value();
            if (w) res["witness"] = json::array({to_json(w->first), to_json(w->second)});
        } else if (name == "gadget-dim2") {
            io::MatrixTuple t = ctx.matrices();
            AltSpace gadget = dim2_gadget(t.matrices);
            std::size_t rd = right_degree_min(t.matrices, guard);
            bool iso2 = has_isotropic_dim2(gadget, guard).has_value();
            res["n"] = t.matrices.size();
            res["m"] = t.cols;
            res["right_degree_min"] = rd;
            res["gadget_dim"] = gadget.dim();
            res["gadget_has_isotropic_dim2"] = iso2;
            res["equivalence_holds"] = (rd < t.matrices.size()) == iso2;
        } else if (name == "singular-exists") {
            io::MatrixTuple t = ctx.matrices();
            MatrixSpace b = MatrixSpace::span_of(t.field, t.rows, t.cols, t.matrices);
            auto w = singular_exists_brute(b, guard);
            res["exists"] = w.has_value();
            if (w) res["witness"] = to_json(w->matrix);
        } else if (name == "baer") {
            AltSpace a = ctx.space();
            auto gens = baer_generators(a);
            MatrixGroupClosure g = group_closure(gens, guard);
            auto comm = g.commutator_subgroup();
            res["generators"] = gens.size();
            res["order"] = g.order();
            res["commutator_order"] = comm.size();
            res["abelian"] = g.is_abelian();
            auto orders = g.abelian_subgroup_orders(guard);
            res["max_abelian_order"] = *orders.rbegin();
            if (verify) {
                std::size_t alpha = alpha_exact(a, guard).alpha;
                const unsigned p = a.field().p();
                bool ok = true;
                std::size_t pm = 1;
                for (std::size_t i = 0; i < a.dim(); ++i) pm *= p;
                std::size_t order_d = pm;
                for (std::size_t d = 0; d <= a.n(); ++d, order_d *= p) ok = ok && (orders.count(order_d) == 1) == (alpha >= d);
                res["alpha"] = alpha;
                res["correspondence_holds"] = ok;
            }
        } else if (name == "quantum") {
            Graph g = ctx.graph();
            quantum::QuantumChannel ch = quantum::channel_from_graph(g);
            res["mode"] = mode;
            if (mode == "period") {
                res["period"] = quantum::period(ch);
            } else if (mode == "decide2") {
                res["period"] = quantum::period(ch);
                res["iso_2_decomposition"] = quantum::decide_iso_2_decomposition(ch);
            } else {
                if (vector_re.size() != g.n()) throw std::invalid_argument("--vector needs exactly n entries");
                quantum::CVector u(static_cast<Eigen::Index>(g.n()));
                for (std::size_t i = 0; i < g.n(); ++i) u(static_cast<Eigen::Index>(i)) = vector_re[i];
                if (normalize) {
                    if (u.norm() == 0) throw std::invalid_argument("--vector is zero");
                    u /= u.norm();
                }
                res["fidelity"] = quantum::fidelity_pure(ch, u);
            }
        } else if (name == "count") {
            std::size_t n = count_args[0], d = count_args[1], q = count_args[2];
            if (q < 2 || q > 1'000'000) throw std::invalid_argument("q must lie in [2, 10^6]");
            BigInt v = kind == "gaussian" ? gaussian_binomial(n, d, static_cast<unsigned>(q))
                                          : isotropic_count_formula(n, d, static_cast<unsigned>(q));
            res["kind"] = kind;
            res["value"] = v.str();
        } else if (name == "stats") {
            AltSpace a = ctx.space();
            Subspace rad = radical_space(a);
            auto [min_deg, v] = min_degree_vector(a, guard);
            res["n"] = a.n();
            res["dim"] = a.dim();
            res["radical_dim"] = rad.dim();
            res["radical"] = to_json(rad);
            res["nondegenerate"] = rad.is_zero();
            res["max_degree"] = max_degree(a, guard);
            res["min_degree"] = min_deg;
            res["min_degree_vector"] = to_json(v);
            res["max_rank"] = max_rank_bruteforce(a, guard);
        } else if (name == "gen") {
            Rng rng(seed);
            PrimeField f(field_p);
            std::string text;
            if (gen_kind == "space") {
                text = io::emit_space(random_alt_space(f, gen_n, gen_m, rng));
            } else if (gen_kind == "graph") {
                text = io::emit_graph(random_graph(gen_n, rng));
            } else if (gen_kind == "connected-graph") {
                if (gen_n < 2) throw std::invalid_argument("connected-graph needs --n >= 2");
                text = io::emit_graph(random_connected_graph(gen_n, rng));
            } else {
                MatrixSpace b = random_matrix_space(f, gen_s, gen_t, gen_m, rng);
                text = io::emit_matrices({f, gen_s, gen_t, b.basis()});
            }
            res["text"] = text;
            raw_output = true;
        }
    } catch (const ParseError& e) {
        doc["inputs"] = ctx.inputs;
        return fail(ParseFailure, "parse", e.what());
    } catch (const GuardExceeded& e) {
        doc["inputs"] = ctx.inputs;
        return fail(GuardFailure, "guard", e.what());
    } catch (const VerificationError& e) {
        doc["inputs"] = ctx.inputs;
        return fail(VerificationFailure, "verification", e.what());
    } catch (const std::exception& e) {
        doc["inputs"] = ctx.inputs;
        return fail(InvalidArgument, "invalid-argument", e.what());
    }

    doc["inputs"] = ctx.inputs;
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    doc["timings"] = {{"total_ms", ms}};
    if (as_json)
        rep.out = doc.dump(2) + "\n";
    else if (raw_output)
        rep.out = res["text"].get<std::string>();
    else
        rep.out = render_text(doc);
    return rep;
}

inline int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    Report r = run_command(args);
    std::fputs(r.out.c_str(), stdout);
    std::fputs(r.err.c_str(), stderr);
    return r.exit_code;
}

}  // namespace altiso::cli
