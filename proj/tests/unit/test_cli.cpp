#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "dlat/cli.hpp"
#include "dlat/io.hpp"
#include "test_support.hpp"

using namespace dlat;

namespace {

std::string fixture(const std::string& name) { return std::string(DLAT_FIXTURE_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
  io::json json() const { return io::parse_json(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("member") {
  const Run yes = run({"member", fixture("g1.json"), "--c", "[\"1\",\"-2\",\"1\"]", "--p", "[0,1,1]"});
  CHECK(yes.code == 0);
  CHECK(yes.json()["member"] == true);
  CHECK(yes.json()["seed"] == 0);
  const Run no = run({"member", fixture("g1_poly.json"), "--p", "[1,0,0]"});
  CHECK(no.code == 1);
  CHECK(no.json()["member"] == false);
  CHECK(run({"member", fixture("order_chain.json"), "--p", "[0,1]"}).code == 0);
  CHECK(run({"member", fixture("order_chain.json"), "--p", "[1,0]"}).code == 1);
}

TEST_CASE("join and meet") {
  const Run j = run({"join", fixture("g1.json"), "--c", "[10,10,10]", "--x", "[0,1,1]", "--y", "[1,2,6]"});
  CHECK(j.code == 0);
  CHECK(j.json()["result"] == io::json::array({"1", "2", "6"}));
  const Run m = run({"meet", fixture("g1.json"), "--c", "[10,10,10]", "--x", "[0,1,1]", "--y", "[1,2,6]"});
  CHECK(m.json()["result"] == io::json::array({"0", "1", "1"}));
  CHECK(run({"join", fixture("g1_poly.json"), "--x", "[0,1,1]", "--y", "[0,0,5]"}).code == 1);
}

TEST_CASE("check-distributive") {
  const Run six = run({"check-distributive", fixture("six_inequalities.json")});
  CHECK(six.code == 0);
  CHECK(six.json()["recognized"] == false);
  CHECK(six.json()["refuted"] == false);
  const Run simplex = run({"check-distributive", fixture("simplex.json")});
  CHECK(simplex.code == 1);
  CHECK(simplex.json()["refuted"] == true);
  const Run chain = run({"check-distributive", fixture("order_chain.json")});
  CHECK(chain.code == 0);
  CHECK(chain.json()["recognized"] == true);
}

TEST_CASE("nnd-basis and netmatrix") {
  const Run diag = run({"nnd-basis", fixture("diagonal_subspace.json")});
  CHECK(diag.code == 0);
  CHECK(diag.json()["basis"] == io::json::parse(R"([["1","1","1","1"]])"));
  const Run anti = run({"nnd-basis", fixture("antidiagonal_subspace.json")});
  CHECK(anti.code == 1);
  CHECK(anti.json()["distributive"] == false);
  const Run net = run({"netmatrix", fixture("g1_basis.json")});
  CHECK(net.code == 0);
  CHECK(net.json()["graph"]["arcs"].size() == 2);
}

TEST_CASE("bond commands") {
  const Run red = run({"reduce", fixture("g1_system.json")});
  CHECK(red.code == 0);
  CHECK(red.json()["pins"] == io::json::array({1}));
  const Run bond = run({"bond", fixture("g1_system.json"), "--p", "[0,1,1]"});
  CHECK(bond.json()["bond"] == io::json::array({"1", "-2", "1"}));
  CHECK(bond.json()["feasible"] == true);
  const Run pot = run({"potential", fixture("g1_system.json"), "--x", "[1,-2,1]"});
  CHECK(pot.code == 0);
  CHECK(pot.json()["potential"] == io::json::array({"0", "1", "1"}));
  CHECK(run({"potential", fixture("g1_system.json"), "--x", "[1,0,0]"}).code == 1);
}

TEST_CASE("delta-translate and lattice-enum") {
  const Run t = run({"delta-translate", fixture("digon_bonds.json"), "--delta", "[0,2]", "--tree", "[0]"});
  CHECK(t.code == 0);
  CHECK(t.json()["upper"] == io::json::array({"1", "-1"}));

  const Run digon = run({"lattice-enum", fixture("digon_bonds.json")});
  CHECK(digon.code == 0);
  CHECK(digon.json()["elements"].size() == 3);
  CHECK(digon.json()["covers"].size() == 2);

  const Run grid = run({"lattice-enum", fixture("path_bonds.json"), "--pin", "2"});
  CHECK(grid.json()["covers"].size() == 4);
  const Run dot = run({"lattice-enum", fixture("path_bonds.json"), "--dot"});
  CHECK(dot.out.rfind("digraph", 0) == 0);
  CHECK(run({"lattice-enum", fixture("digon_bonds.json"), "--cap", "2"}).code == 3);
}

TEST_CASE("cycles, balance and is-bond") {
  const Run c = run({"cycles", fixture("g2.json")});
  CHECK(c.code == 0);
  REQUIRE(c.json()["supports"].size() == 1);
  CHECK(c.json()["supports"][0]["kind"] == "bicycle");
  CHECK(c.json()["supports"][0]["flow"] == io::json::array({"1", "3", "2"}));
  CHECK(run({"cycles", fixture("g2.json"), "--dot"}).out.find("bicycle 0") != std::string::npos);

  const Run b = run({"balance", fixture("g1.json"), "--x", "[1,0,0]"});
  CHECK(b.json()["balances"][0]["balance"] == "1");
  CHECK(b.json()["in_image"] == false);

  CHECK(run({"is-bond", fixture("g2.json"), "--c", "[0,3,0]", "--x", "[-4,2,-1]"}).code == 0);
  CHECK(run({"is-bond", fixture("g2.json"), "--c", "[-5,3,0]", "--x", "[-4,2,-1]"}).code == 1);
  CHECK(run({"is-bond", fixture("g2.json"), "--x", "[-4,2,-1]", "--delta",
             R"([{"signs":[1,1,1],"value":"1"}])"})
            .code == 1);
}

TEST_CASE("dualize and breakeven-gen") {
  const Run d = run({"dualize", fixture("g1_embedding.json")});
  CHECK(d.code == 0);
  CHECK(d.json()["sigma"] == io::json::array({"1", "3", "3"}));
  CHECK(d.json()["dual"]["n"] == 2);

  const Run g = run({"breakeven-gen", fixture("g1.json"), "--mu", "[1,2,6]"});
  CHECK(g.json()["graph"]["arcs"][2]["lambda"] == "6");
  const Run r1 = run({"breakeven-gen", fixture("g2.json"), "--seed", "5"});
  const Run r2 = run({"breakeven-gen", fixture("g2.json"), "--seed", "5"});
  CHECK(r1.out == r2.out);
  CHECK(r1.json()["breakeven"] == true);
  CHECK(r1.json()["seed"] == 5);
}

TEST_CASE("verify") {
  const Run g1 = run({"verify", fixture("g1.json")});
  CHECK(g1.code == 0);
  CHECK(g1.json()["pass"] == true);
  const Run g2 = run({"verify", fixture("g2.json"), "--supports", fixture("g2_supports.json")});
  CHECK(g2.code == 0);
  CHECK(g2.json()["bicycles"] == 1);
  const Run bad = run({"verify", fixture("g2.json"), "--supports", fixture("g2_supports_corrupted.json")});
  CHECK(bad.code == 1);
  bool found = false;
  const io::json report = bad.json();
  for (const auto& c : report["checks"]) {
    if (c["name"] == "claimed-supports") {
      found = true;
      CHECK(c["pass"] == false);
      CHECK(c["counterexample"]["claimed"] == io::json::array({"1", "3", "3"}));
      CHECK(c["counterexample"]["computed"] == io::json::array({"1", "3", "2"}));
    }
  }
  CHECK(found);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"member", fixture("g1_poly.json")}).code == 2);
  const Run bad = run({"cycles", fixture("malformed.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("malformed.json:3:") != std::string::npos);
  CHECK(run({"cycles", fixture("missing.json")}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output file and determinism") {
  const Run a = run({"verify", fixture("g2.json"), "--seed", "3"});
  const Run b = run({"verify", fixture("g2.json"), "--seed", "3"});
  CHECK(a.out == b.out);

  const auto path = std::filesystem::temp_directory_path() / "dlat_cli_output_test.json";
  const Run to_file = run({"verify", fixture("g2.json"), "--seed", "3", "--output", path.string()});
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == a.out);
  std::filesystem::remove(path);
}
