#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace matchfree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadInput = 2;

/// Runs one command. args excludes the program name. "-" as --input reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct SuiteOptions {
    int s_max = 4;
    std::uint64_t seed = kDefaultSeed;
    int count = 200;  ///< random families in the bounds suite
};

/// {"suite": name, "ok": bool, "checks": [{"name", "ok", "detail"}, ...]}.
/// The theorem suite stops at its first failing check.
[[nodiscard]] io::Json run_suite(const std::string& suite, const SuiteOptions& opts);

}  // namespace matchfree::cli
