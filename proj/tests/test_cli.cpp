#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "altiso/cli.hpp"

using namespace altiso;
using altiso::cli::json;
using altiso::cli::run_command;

namespace {

const std::string samples = ALTISO_SAMPLES;

std::string write_temp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("altiso_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

json run_json(std::vector<std::string> args, int expected_exit = 0) {
    args.insert(args.begin(), "--json");
    cli::Report r = run_command(args);
    EXPECT_EQ(r.exit_code, expected_exit) << r.err;
    return json::parse(r.out);
}

std::string without_timings(json doc) {
    doc.erase("timings");
    return doc.dump();
}

}  // namespace

TEST(Cli, ChiOnTriangleOverThreeMethods) {
    std::string k3 = write_temp("k3.ams", run_command({"--field", "3", "from-graph", "-g", samples + "/k3.graph"}).out);
    for (std::string m : {"brute", "lawler", "maxcover"}) {
        json doc = run_json({"chi", "-f", k3, "--method", m});
        EXPECT_EQ(doc["command"], "chi");
        EXPECT_EQ(doc["results"]["chi"], 3);
        EXPECT_EQ(doc["results"]["method"], m);
        EXPECT_EQ(doc["results"]["certificate"].size(), 3u);
    }
}

TEST(Cli, ReportsAreDeterministic) {
    const std::vector<std::vector<std::string>> commands{
        {"alpha", "-f", samples + "/j4.ams"},
        {"maximal", "-f", samples + "/j4.ams", "--list"},
        {"stats", "-f", samples + "/j4.ams"},
        {"--seed", "5", "gen", "space", "--n", "4", "--m", "2"},
        {"to-graph-witness", "-g", samples + "/c5.graph", "--what", "coloring"},
        {"quantum", "period", "-g", samples + "/c4.graph"},
    };
    for (const auto& c : commands) EXPECT_EQ(without_timings(run_json(c)), without_timings(run_json(c)));
}

TEST(Cli, ReportSchema) {
    json doc = run_json({"alpha", "-f", samples + "/j4.ams"});
    EXPECT_EQ(doc["seed"], 0);
    EXPECT_EQ(doc["guard"]["limit"], 10000000);
    EXPECT_TRUE(doc["inputs"]["space"]["digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    EXPECT_TRUE(doc["timings"]["total_ms"].is_number());
    EXPECT_EQ(doc["results"]["alpha"], 2);
    Subspace w = cli::subspace_from_json(PrimeField(2), 4, doc["results"]["witness"]);
    EXPECT_EQ(w.dim(), 2u);
}

TEST(Cli, MaximalCountsAndDecomposition) {
    json m = run_json({"maximal", "-f", samples + "/j4.ams", "--method", "filter"});
    EXPECT_EQ(m["results"]["count"], 15);
    json d = run_json({"decompose", "-f", samples + "/j4.ams"});
    EXPECT_EQ(d["results"]["parts"], 2);
    EXPECT_EQ(d["results"]["max_degree"], 1);
    json l = run_json({"decompose", "-f", samples + "/j4.ams", "--method", "lawler"});
    EXPECT_EQ(l["results"]["parts"], 2);
}

TEST(Cli, GraphWitnesses) {
    json is = run_json({"--field", "3", "to-graph-witness", "-g", samples + "/c5.graph"});
    EXPECT_EQ(is["results"]["alpha"], 2);
    EXPECT_EQ(is["results"]["independent_set"].size(), 2u);
    json col = run_json({"to-graph-witness", "-g", samples + "/c5.graph", "--what", "coloring"});
    EXPECT_EQ(col["results"]["chi"], 3);
}

TEST(Cli, BipartiteCommands) {
    json n = run_json({"ncrk", "-f", samples + "/j4.ams", "--split", "2"});
    EXPECT_EQ(n["results"]["ncrk"], 2);
    json ab = run_json({"alpha-bipartite", "-f", samples + "/j4.ams", "--split", "2"});
    EXPECT_EQ(ab["results"]["alpha"], 2);
    std::string wide = write_temp("wide.mat", "mat 2 1 2 1\n\n1 0\n");
    json p = run_json({"ncrk", "-m", wide, "--pad"});
    EXPECT_EQ(p["results"]["ncrk"], 1);
    EXPECT_EQ(p["results"]["padding_identity_holds"], true);
    json adj = run_json({"adjoint", "-f", samples + "/j2_f3.ams", "--find-hyperbolic"});
    EXPECT_EQ(adj["results"]["adjoint_dim"], 4);
    EXPECT_EQ(adj["results"]["hyperbolic_found"], true);
}

TEST(Cli, GadgetCommands) {
    json s = run_json({"singular-exists", "-m", samples + "/pencil.mat"});
    EXPECT_EQ(s["results"]["exists"], true);
    std::string tuple = write_temp("tuple.mat", "mat 3 2 1 2\n\n1\n0\n\n0\n1\n");
    json g = run_json({"gadget-dim2", "-m", tuple});
    EXPECT_EQ(g["results"]["equivalence_holds"], true);
    json b = run_json({"baer", "-f", samples + "/j2_f3.ams", "--verify"});
    EXPECT_EQ(b["results"]["order"], 27);
    EXPECT_EQ(b["results"]["max_abelian_order"], 9);
    EXPECT_EQ(b["results"]["correspondence_holds"], true);
    json d2 = run_json({"dim2", "-f", samples + "/j4.ams"});
    EXPECT_EQ(d2["results"]["exists"], true);
}

TEST(Cli, QuantumCommands) {
    EXPECT_EQ(run_json({"quantum", "period", "-g", samples + "/c4.graph"})["results"]["period"], 2);
    EXPECT_EQ(run_json({"quantum", "decide2", "-g", samples + "/c5.graph"})["results"]["iso_2_decomposition"], false);
    std::string k2 = write_temp("k2.graph", "graph 2\n1 2\n");
    json f = run_json({"quantum", "fidelity", "-g", k2, "--vector", "1", "1", "--normalize"});
    EXPECT_NEAR(f["results"]["fidelity"].get<double>(), 0.5, 1e-9);
    run_json({"quantum", "fidelity", "-g", k2, "--vector", "1", "1"}, cli::InvalidArgument);
}

TEST(Cli, CountUsesBigIntegers) {
    EXPECT_EQ(run_json({"count", "gaussian", "4", "2", "2"})["results"]["value"], "35");
    EXPECT_EQ(run_json({"count", "iso-formula", "6", "3", "2"})["results"]["value"], "135");
    EXPECT_EQ(run_json({"count", "gaussian", "40", "20", "251"})["results"]["value"].get<std::string>(),
              gaussian_binomial(40, 20, 251).str());
}

TEST(Cli, FromGraphRoundTrip) {
    cli::Report r = run_command({"--field", "3", "from-graph", "-g", samples + "/c5.graph"});
    ASSERT_EQ(r.exit_code, 0);
    AltSpace a = io::parse_space_text(r.out);
    EXPECT_EQ(a.basis(), space_from_graph(io::parse_graph(samples + "/c5.graph"), PrimeField(3)).basis());
}

TEST(Cli, GenOutputParses) {
    cli::Report s = run_command({"--seed", "9", "--field", "5", "gen", "space", "--n", "5", "--m", "3"});
    EXPECT_EQ(io::parse_space_text(s.out).field().p(), 5u);
    cli::Report g = run_command({"--seed", "9", "gen", "connected-graph", "--n", "6"});
    EXPECT_TRUE(io::parse_graph_text(g.out).is_connected());
    cli::Report m = run_command({"gen", "matrices", "--s", "2", "--t", "3", "--m", "2"});
    EXPECT_EQ(io::parse_matrices_text(m.out).cols, 3u);
    EXPECT_EQ(run_command({"--seed", "9", "gen", "graph"}).out, run_command({"--seed", "9", "gen", "graph"}).out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_command({}).exit_code, cli::ParseFailure);
    EXPECT_EQ(run_command({"chi", "--method", "nope", "-f", samples + "/j4.ams"}).exit_code, cli::ParseFailure);
    EXPECT_EQ(run_command({"chi", "-f", samples + "/missing.ams"}).exit_code, cli::ParseFailure);
    std::string bad = write_temp("bad.ams", "ams 3 2 1\n0 1\n1 0\n");
    cli::Report r = run_command({"--json", "chi", "-f", bad});
    EXPECT_EQ(r.exit_code, cli::ParseFailure);
    EXPECT_EQ(json::parse(r.out)["error"]["kind"], "parse");
    EXPECT_EQ(run_command({"--guard", "3", "chi", "-f", samples + "/j4.ams", "--method", "brute"}).exit_code,
              cli::GuardFailure);
    EXPECT_EQ(run_command({"alpha-bipartite", "-f", samples + "/j4.ams", "--split", "1"}).exit_code, cli::InvalidArgument);
    EXPECT_EQ(run_command({"baer", "-f", samples + "/j4.ams"}).exit_code, cli::InvalidArgument);
    EXPECT_EQ(run_command({"--help"}).exit_code, cli::Ok);
}
