#include <cstdio>

#include "windex/acceptance.hpp"

int main() {
    const auto results = windex::acceptance::run_all(42);
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d: %s (max residual %.3e, %.0f ms)%s%s\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.max_residual, r.millis,
                    r.detail.empty() ? "" : " - ", r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
