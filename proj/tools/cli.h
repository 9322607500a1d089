#ifndef QCHD_TOOLS_CLI_H
#define QCHD_TOOLS_CLI_H

#include <cstdint>
#include <string>
#include <vector>

#include "qchd/errors.h"

namespace qchd::cli {

inline const std::vector<std::string> kExampleIds{"harrow-lambda", "harrow-bound",     "harrow-adaptive",
                                                  "pure-chernoff", "depolarizing-fig", "amplitude-fig"};
inline const std::vector<std::string> kSuites{"nussbaum-szkola", "exponent-identities", "prop1-floor", "classical-dp"};

struct UnknownExample : Error {
    using Error::Error;
};

/// Prints computed vs reference values with PASS/FAIL lines; returns the exit code.
int run_reproduce(const std::string &id, std::uint64_t seed);

/// Runs a property suite with per-property diagnostics; returns the exit code.
int run_verify(const std::string &suite, std::uint64_t seed);

/// Accumulates PASS/FAIL lines for a command.
class Verdicts {
   public:
    void check(bool ok, const std::string &line);
    int exit_code() const {
        return failures_ == 0 ? 0 : 1;
    }
    int failures() const {
        return failures_;
    }

   private:
    int failures_ = 0;
};

}  // namespace qchd::cli

#endif
