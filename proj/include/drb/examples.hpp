#pragma once

// Worked examples with their canonical goldens, replayed by `drb examples`.

#include <string>
#include <vector>

#include "drb/expr.hpp"

namespace drb {

struct WorkedExample {
    std::string id;
    std::string title;
    AlgebraKind algebra;
    std::string input;
    std::string expected;  // canonical text of the value
};

// A display whose printed form disagrees with the computed value. The check
// passes when `computed - printed` equals `difference` exactly.
struct DisplayErratum {
    std::string id;
    AlgebraKind algebra;
    std::string computed;
    std::string printed;
    std::string difference;
    std::string note;
};

const std::vector<WorkedExample> &worked_examples();
const std::vector<DisplayErratum> &display_errata();

struct ExampleOutcome {
    std::string id;
    std::string actual;
    std::string expected;
    bool passed = false;
    double elapsed_ms = 0;
};

ExampleOutcome run_example(const WorkedExample &ex);
ExampleOutcome run_erratum(const DisplayErratum &er);

}  // namespace drb
