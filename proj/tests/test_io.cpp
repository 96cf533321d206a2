#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "slowtorus/io.hpp"

using namespace slowtorus;

namespace {

struct Fixture {
    ConstructionState st;
    AlphaCertificate ac;
};

const Fixture& fix() {
    static Fixture f = [] {
        Settings s;
        s.prec = PrecCtx{192, mpfr_prec_t(1) << 16};
        auto [st, ac] = build(GrowthFunction::parse("log2:2,1"), 1, ConstantsProfile{}, s);
        return Fixture{std::move(st), std::move(ac)};
    }();
    return f;
}

}  // namespace

TEST_CASE("state JSON round-trips byte for byte") {
    const auto& f = fix();
    nlohmann::json j = state_to_json(f.st, f.ac);
    auto [st2, ac2] = state_from_json(j);
    nlohmann::json j2 = state_to_json(st2, ac2);
    CHECK(j.dump(2) == j2.dump(2));

    CHECK(j["r"][0] == "2^-3");
    CHECK(j["N"][0] == "65");
    CHECK(j["q"][1] == "6500");
    CHECK(j["alpha"] == "1");  // depth 1: alpha = 1/q_1
}

TEST_CASE("deferred M serializes as null and survives the round trip") {
    Fixture f = fix();
    f.st.M_set[1] = false;
    nlohmann::json j = state_to_json(f.st, f.ac);
    CHECK(j["M"][0].is_null());
    auto [st2, ac2] = state_from_json(j);
    (void)ac2;
    CHECK_FALSE(st2.M_set[1]);
    CHECK(st2.m_threshold[1] == f.st.m_threshold[1]);
}

TEST_CASE("malformed state JSON is rejected") {
    const auto& f = fix();
    nlohmann::json j = state_to_json(f.st, f.ac);
    j["q"].erase(1);  // length no longer matches depth
    CHECK_THROWS(state_from_json(j));
}

TEST_CASE("certificate JSON carries margins as decimal endpoints") {
    const auto& f = fix();
    VerifyConfig cfg;
    cfg.dense_to = 30;
    cfg.log_samples = 4;
    cfg.grid = 8;
    cfg.interior_samples = 1;
    cfg.prec = 256;
    Certificate cert = verify_all(f.st, f.ac, cfg);
    nlohmann::json j = certificate_to_json(cert);
    CHECK(j["overall"] == "PASS");
    REQUIRE(j["checks"].is_array());
    REQUIRE(!j["checks"].empty());
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("status"));
        CHECK(c.contains("margin_lo"));
        CHECK(c.contains("margin_hi"));
        CHECK(c.contains("witnesses"));
    }
}

TEST_CASE("verification is deterministic") {
    const auto& f = fix();
    VerifyConfig cfg;
    cfg.dense_to = 30;
    cfg.log_samples = 4;
    cfg.grid = 8;
    cfg.interior_samples = 2;
    cfg.prec = 256;
    std::string a = certificate_to_json(verify_all(f.st, f.ac, cfg)).dump(2);
    std::string b = certificate_to_json(verify_all(f.st, f.ac, cfg)).dump(2);
    CHECK(a == b);
}

TEST_CASE("growth CSV shape and ordering") {
    const auto& f = fix();
    Rat c = choose_c(f.st);
    auto sched = make_schedule(f.st, 20, 4, true);
    auto rows = growth_table_serial(f.st, c, f.ac.alpha, sched, 192, 8);
    std::string csv = growth_csv(rows);

    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "N,phi_lo,phi_hi,S_lo,S_hi,T_lo,T_hi,Wmax_lo,Wmax_hi,gamma_lo,gamma_hi");
    size_t data_lines = 0;
    while (std::getline(in, line)) {
        ++data_lines;
        size_t commas = 0;
        for (char ch : line) commas += (ch == ',');
        CHECK(commas == 10);
    }
    CHECK(data_lines == rows.size());
}

TEST_CASE("plot data keeps the enclosure ordering") {
    const auto& f = fix();
    Rat c = choose_c(f.st);
    auto sched = make_schedule(f.st, 20, 4, true);
    auto rows = growth_table_serial(f.st, c, f.ac.alpha, sched, 192, 8);
    std::string plot = plot_data_from_csv(growth_csv(rows));

    std::istringstream in(plot);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header.find("ratio_lo") != std::string::npos);
    std::string line;
    size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::istringstream ls(line);
        std::string nf, lo, hi;
        REQUIRE(std::getline(ls, nf, ','));
        REQUIRE(std::getline(ls, lo, ','));
        REQUIRE(std::getline(ls, hi, ','));
        CHECK(std::stod(lo) <= std::stod(hi));
        // Theorem direction: Gamma stays below phi on the whole table.
        CHECK(std::stod(hi) <= 1.0);
    }
    CHECK(n == rows.size());
}

TEST_CASE("FNV-1a test vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(digest_hex("") == "cbf29ce484222325");
}

TEST_CASE("write_atomic replaces content completely") {
    std::string path = "io_test_tmp.txt";
    write_atomic(path, "first\n");
    write_atomic(path, "second\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second\n");
    std::remove(path.c_str());
}
