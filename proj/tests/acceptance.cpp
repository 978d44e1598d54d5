#include <cstdio>

#include "ordlab/acceptance.hpp"

int main() {
    int failed = 0;
    for (const auto& c : ordlab::run_acceptance(7)) {
        std::printf("[%s] %2d %-32s %8.1f ms  %s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), c.ms, c.detail.c_str());
        failed += !c.pass;
    }
    std::printf("%d of 13 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
