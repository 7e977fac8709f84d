#pragma once

// Error taxonomy. Several of these are not "failures" but meaningful
// outcomes of the computation (a descent that is obstructed at the level or
// conductor is exactly the situation the vanishing arguments exploit), so
// they get first-class types instead of generic exceptions.

#include <stdexcept>
#include <string>

namespace sfj {

struct out_of_precision : std::runtime_error {
    explicit out_of_precision(const std::string& what) : std::runtime_error(what) {}
};

struct precision_too_low : std::runtime_error {
    explicit precision_too_low(const std::string& what) : std::runtime_error(what) {}
};

struct precision_shrunk_below_one : std::runtime_error {
    explicit precision_shrunk_below_one(const std::string& what) : std::runtime_error(what) {}
};

struct not_primitive : std::runtime_error {
    explicit not_primitive(const std::string& what) : std::runtime_error(what) {}
};

struct bound_exhausted : std::runtime_error {
    explicit bound_exhausted(const std::string& what) : std::runtime_error(what) {}
};

struct inconsistent_table : std::runtime_error {
    explicit inconsistent_table(const std::string& what) : std::runtime_error(what) {}
};

struct missing_coefficient : std::runtime_error {
    explicit missing_coefficient(const std::string& what) : std::runtime_error(what) {}
};

// descend(): input has a coefficient off the multiples of p.
struct not_supported_on_multiples : std::runtime_error {
    explicit not_supported_on_multiples(const std::string& what) : std::runtime_error(what) {}
};

// descend(): p does not divide N/4. Meaningful output: a form supported on
// multiples of p cannot exist at this level.
struct level_obstruction : std::runtime_error {
    explicit level_obstruction(const std::string& what) : std::runtime_error(what) {}
};

// descend(): conductor of chi*eps_p does not divide N/p, so the descended
// space does not exist. Meaningful output, same as above.
struct conductor_obstruction : std::runtime_error {
    explicit conductor_obstruction(const std::string& what) : std::runtime_error(what) {}
};

// sanitize(): a descent obstruction fired where the hypotheses on the input
// say it cannot; signals inconsistent input data.
struct hypothesis_violation : std::runtime_error {
    explicit hypothesis_violation(const std::string& what) : std::runtime_error(what) {}
};

struct zero_input : std::runtime_error {
    explicit zero_input(const std::string& what) : std::runtime_error(what) {}
};

struct not_found_within_precision : std::runtime_error {
    explicit not_found_within_precision(const std::string& what) : std::runtime_error(what) {}
};

struct character_parity : std::runtime_error {
    explicit character_parity(const std::string& what) : std::runtime_error(what) {}
};

struct not_found : std::runtime_error {
    explicit not_found(const std::string& what) : std::runtime_error(what) {}
};

struct cache_error : std::runtime_error {
    explicit cache_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sfj
