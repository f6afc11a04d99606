#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lhm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Command-line entry point. `args` excludes the program name.
///
///   steady    --config F [--delta-p X]
///   sweep     --config F --out T.csv [--svg P.svg] [--from A --to B --step S]
///   bands     --in T.csv --predicate NAME
///   calibrate --config F --out F2 [--electric-target LO HI]
///             [--magnetic-target LO HI] [--statistic floor|peak]
///   selfcheck
///
/// Returns 0 on success, 1 on usage or input errors, 2 on numerical failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The grammar printed after every usage error.
const char* cli_grammar();

}  // namespace lhm
