#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gmdiv/manifest.hpp"

using namespace gmdiv;

TEST_CASE("config hash is canonical") {
    CHECK(config_hash("{\"a\":1,\"b\":2}") == config_hash("{\"b\":2,\"a\":1}"));
    CHECK(config_hash("{\"a\":1}") != config_hash("{\"a\":2}"));
    CHECK(config_hash("{ \"a\" : 1 }") == config_hash("{\"a\":1}"));
}

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0}) {
        const std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("manifest JSON carries the hash") {
    RunManifest m;
    m.command = "div";
    m.config_json = "{\"kind\":\"TV\"}";
    m.seed = 7;
    m.timestamp = "2026-01-01T00:00:00Z";
    const auto j = m.to_json();
    CHECK(j.find("config_hash") != std::string::npos);
    CHECK(j.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("csv writer emits header and rows") {
    const std::string path = "test_manifest_tmp.csv";
    {
        CsvWriter csv(path, {"a", "b"});
        csv.row({1.5, 2.0 / 3.0});
        csv.row_mixed({"x", "y"});
    }
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    CHECK(ss.str() == "a,b\n1.5," + format_g17(2.0 / 3.0) + "\nx,y\n");
    std::remove(path.c_str());
}
