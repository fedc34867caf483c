#include <cstdio>

#include <fmt/core.h>

#include "slopes/acceptance.hpp"

int main()
{
    const auto report = slopes::run_acceptance(slopes::AcceptanceOptions{}, [](const slopes::CriterionResult &r) {
        fmt::print("{}\n", slopes::format_line(r));
        std::fflush(stdout);
    });
    return report.passed() ? 0 : 1;
}
