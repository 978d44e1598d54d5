#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "ordlab/cli.hpp"

using namespace ordlab;

namespace {
struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("index query") {
    Run r = run({"index", "--fn", "fdelta(w^2)", "--kind", "beta", "--delta", "1", "--json"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("version"));
    CHECK(r.out.find("EmptyAt") != std::string::npos);
}

TEST_CASE("classify query") {
    Run r = run({"classify", "--fn", "fdelta(w^w)", "--json"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(r.out.find("CertifiedNo") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"index", "--fn", "fdelta(w+", "--kind", "beta", "--delta", "1"}).code == kExitParse);
    CHECK(run({"nosuchcommand"}).code == kExitUsage);
    CHECK(run({"index", "--fn", "fdelta(w^w)", "--kind", "beta", "--delta", "1", "--budget", "w"}).code == kExitBudget);
    CHECK(run({"separate", "--fn", "fdelta(w^2)", "--a", "1/4", "--b", "3/4", "--inject-fault"}).code == kExitVerify);
}

TEST_CASE("parse errors are reported as JSON") {
    Run r = run({"witness", "--fn", "w + w^2", "--json"});
    CHECK(r.code == kExitParse);
    auto j = nlohmann::json::parse(r.out.empty() ? r.err : r.out);
    CHECK(j["error"].contains("code"));
}

TEST_CASE("deterministic output") {
    std::vector<std::string> args = {"witness", "--fn", "fdelta(w^3)", "--json", "--deterministic"};
    CHECK(run(args).out == run(args).out);
}
