#include "support.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace testing;

namespace {

struct Run {
    int status;
    std::string out;
};

// stdout only; stderr goes to the terminal
Run run(const std::string& args) {
    std::string cmd = std::string("cd '") + DUALPROV_TEST_DATA + "' && '" + DUALPROV_BIN + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("eval") {
    CHECK(run("eval -s graph_g.txt --formula-file phi.fo").out == "true\n");
    CHECK(run("eval -s graph_g.txt -k nat --formula-file phi.fo").out == "6\n");
    CHECK(run("eval -s graph_e.txt -k nat --formula-file phi.fo").out == "8\n");
    CHECK(run("eval -s graph_h.txt --formula-file phi.fo").out == "true\n");
    CHECK(run("eval -s graph_g.txt -f 'E x. A y. E(x,y)'").out == "false\n");
    CHECK(run("eval -s graph_g.txt -k viterbi -a gamma.annot --formula-file phi.fo").out == "0.54\n");
    CHECK(run("eval -s graph_g.txt -f 'E(x,a)' --bind x=b").out == "true\n");
    CHECK(run("eval -s graph_g.txt -f 'E(x,a)' --bind x=c").out == "false\n");
}

TEST_CASE("provenance") {
    auto r = run("provenance -t beta.track --formula-file phi.fo");
    CHECK(r.status == 0);
    CHECK(r.out == "p*~r + p*t + p*q*~r + p*q*t + p*~r*~s + p*~s*t\n");
    CHECK(run("provenance -t pi.track -f '~(A x. ~(A y. (x = y | (E(x,y) & ~E(y,x)))))'").out ==
          "p*r*~t + ~p*q*~s*t\n");
    CHECK(run("provenance -t pair.track --formula-file tau.fo").out ==
          "p*q + p*r + ~p*~q + ~p*~s + q*s + ~q*~r + r*s + ~r*~s\n");

    auto pi = DualPolynomial::parse(first_line(run("provenance -t pi.track --formula-file phi.fo").out));
    CHECK(pi.monomials().size() == 30);
    CHECK(pi == evaluate(tracking("pi.track"), parse(kPhi, tracking("pi.track").domain())));

    auto factored = run("provenance --factored-input '(p+~p)*(q+~q)*t' --kill q");
    CHECK(factored.out == "p*~q*t + ~p*~q*t\n");
}

TEST_CASE("models") {
    auto r = run("models -t pi.track -s graph_f.txt --formula-file phi.fo");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("# monomial p*~r\n# free E(b,a) E(b,c) E(c,b)\nuniverse a b c\nrel E/2\nfact E(a,b)\n\n", 0) == 0);
    std::size_t blocks = 0;
    for (std::size_t i = r.out.find("# monomial"); i != std::string::npos; i = r.out.find("# monomial", i + 1))
        ++blocks;
    CHECK(blocks == 30);

    auto all = run("models -t pi.track --all --formula-file phi.fo");
    CHECK(all.status == 0);
    CHECK(all.out.size() > r.out.size());
    // beta fixes facts without tokens in a way no compatible family allows
    CHECK(run("models -t beta.track --formula-file phi.fo").status == 3);
    CHECK(run("models -t pi.track --all --cap 2 --formula-file phi.fo").status == 4);
}

TEST_CASE("maximize, clearance, hom, check") {
    auto m = run("maximize -t pi.track -c confidence.scores --formula-file phi.fo");
    CHECK(first_line(m.out) == "~p*~q  1");
    CHECK(m.out.find("# p*~r  27/50 ≈ 0.54\n") != std::string::npos);
    auto u = run("maximize -t pi.track -c uniform.scores --formula-file phi.fo");
    CHECK(first_line(u.out).rfind("p*~r  1/9", 0) == 0);

    auto c = run("clearance -t beta.track -l clearance.scores --formula-file phi.fo");
    CHECK(first_line(c.out) == "P");
    CHECK(c.out.find("# p*~r  T\n") != std::string::npos);
    CHECK(c.out.find("# p*t  P\n") != std::string::npos);

    CHECK(run("hom -t beta.track -k viterbi -c confidence.scores --formula-file phi.fo").out == "0.54\n");
    CHECK(run("check -t pair.track --formula-file tau.fo").out == "satisfiable yes\nvalid yes\n");
    CHECK(run("check -t pi.track --formula-file phi.fo").out == "satisfiable yes\nvalid no\n");
}

TEST_CASE("update") {
    auto r = run("update -t pi.track -s graph_g.txt --insert 'E(a,c)' --formula-file phi.fo --show-model");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "p*t + p*q*t + p*r*t + p*~s*t\n"
          "universe a b c\nrel E/2\nfact E(a,b)\nfact E(a,c)\nfact E(b,a)\nfact E(b,c)\n");
    CHECK(run("update -t pi.track -s graph_g.txt --insert 'E(c,a)' --formula-file phi.fo").status == 3);
}

TEST_CASE("oracle agrees with the provenance coefficient sum") {
    CHECK(run("oracle -s graph_e.txt --formula-file phi.fo").out == "8\n");
    CHECK(run("oracle -s graph_f.txt --formula-file phi.fo").out == "6\n");
    CHECK(run("oracle -t beta.track --formula-file phi.fo").out == "6\n");
    for (const char* t : {"beta.track", "pi.track", "pair.track"}) {
        const char* f = std::string(t) == "pair.track" ? "tau.fo" : "phi.fo";
        auto prov = DualPolynomial::parse(
            first_line(run(std::string("provenance -t ") + t + " --formula-file " + f).out));
        auto count = run(std::string("oracle -t ") + t + " --formula-file " + f).out;
        CHECK(count == prov.coefficient_sum().str() + "\n");
    }
    auto trees = run("oracle -t pi.track -f '~(A x. ~(A y. (x = y | (E(x,y) & ~E(y,x)))))' --print-trees");
    CHECK(trees.out.find("        ~E(b,a)  [~t]\n") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("eval -s graph_g.txt -f 'E(a,'").status == 2);
    CHECK(run("bogus").status == 2);
    CHECK(run("eval").status == 2);
    CHECK(run("eval -s missing.txt -f 'E(a,a)'").status == 2);
    CHECK(run("eval -s graph_g.txt -f 'E(x,a)'").status == 3);
    // z is not an element, so it reads as an unbound variable
    CHECK(run("eval -s graph_g.txt -f 'E(a,z)'").status == 3);
    CHECK(run("provenance -t pi.track -f 'E(x,a)'").status == 3);
    CHECK(run("oracle -s graph_e.txt --formula-file phi.fo --cap 3").status == 4);
}

TEST_CASE("repeat runs are byte-identical") {
    for (const char* args : {"provenance -t pi.track --formula-file phi.fo",
                             "models -t pi.track --formula-file phi.fo",
                             "oracle -t pi.track --formula-file phi.fo --print-trees"}) {
        auto a = run(args);
        auto b = run(args);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
    }
}
