#pragma once

// Built-in second-order distributions and the JSON model format.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sofree/model.hpp"
#include "sofree/perm.hpp"

namespace sofree {

// Kinds: haar_unitary, semicircular, circular, free_poisson,
// circular_product (c1 c2 for free circulars, as a rule).
struct BuiltinSpec {
    std::string kind;
    Rational rate = 1;     // free_poisson only
    int truncation = 32;
    std::string letter;    // empty: the kind's default name
    std::string family;    // empty: same as the letter
};

ModelPtr build(const BuiltinSpec& spec);
// "semicircular", "free_poisson", "free_poisson:3/2".
ModelPtr builtin(std::string_view name, int truncation = 32, std::string_view letter = {});
bool is_builtin_name(std::string_view name);
const std::vector<std::string>& builtin_names();

// Haar unitary seen through the letters u^e for the given exponents; every
// exponent must come with its negative. Names: "u^2", "u^-2", ...
ModelPtr haar_exponents(const std::vector<int>& exponents, int truncation = 32);

// Errors carry the JSON pointer of the offending field.
class LoadError : public Error {
public:
    LoadError(const std::string& pointer, const std::string& what)
        : Error(pointer + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

ModelPtr load_model(const nlohmann::json& doc);
ModelPtr load_model_text(std::string_view text);
// Builtin name or path to a JSON file.
ModelPtr resolve_model(std::string_view ref, int truncation = 32);

// Builtins emit their rule; other models emit their defining side as tables
// of single-family words up to `order` (default: truncation).
nlohmann::json emit_model(const Model& m, int order = -1);

}  // namespace sofree
