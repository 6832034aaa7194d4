#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "causal_channels/acceptance.h"

using namespace causal_channels;

int main() {
    bool all = true;
    for (const auto &c : run_acceptance()) {
        bool pass = c.report.pass();
        all = all && pass;
        std::printf("criterion %d: %s (%s, %.3f s)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), c.report.seconds);
        for (const auto &k : c.report.checks) {
            if (!k.pass) {
                std::printf("    %s = %.3g > %.3g %s\n", k.name.c_str(), k.value, k.threshold, k.witness.c_str());
            }
        }
    }

    std::string cmd = std::string("\"") + CAUSAL_CHANNELS_CLI + "\" selftest > /dev/null";
    auto start = std::chrono::steady_clock::now();
    int status = std::system(cmd.c_str());
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = status == 0 && seconds < 180.0;
    all = all && pass;
    std::printf("criterion 8: %s (selftest exit %d, %.3f s)\n", pass ? "PASS" : "FAIL", status, seconds);
    return all ? 0 : 1;
}
