#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "matchfree/constructions.hpp"
#include "matchfree/invariant_d.hpp"
#include "matchfree/montecarlo.hpp"
#include "matchfree/oracle.hpp"
#include "matchfree/rational.hpp"
#include "matchfree/setfam.hpp"

namespace matchfree::io {

using Json = nlohmann::ordered_json;

/// Malformed input; the CLI maps it to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] Json set_to_json(SetMask m);
[[nodiscard]] Json sets_to_json(std::span<const SetMask> sets);
/// {"n": int, "sets": [[int, ...], ...]}, sets in canonical order, elements ascending.
[[nodiscard]] Json family_to_json(const Family& f);
/// Throws InputError on anything but a well-formed family document.
[[nodiscard]] Family family_from_json(const Json& j);
[[nodiscard]] Family parse_family(const std::string& text);

/// {"num": int, "den": int}
[[nodiscard]] Json rational_to_json(const Rational& r);
[[nodiscard]] Rational rational_from_json(const Json& j);

[[nodiscard]] Json params_to_json(const Params& p);
[[nodiscard]] Json report_to_json(const BoundReport& r);
[[nodiscard]] Json estimate_to_json(const McEstimate& e);
[[nodiscard]] Json oracle_to_json(const OracleResult& r);

}  // namespace matchfree::io
