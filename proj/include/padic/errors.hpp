#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Invalid argument or violated precondition. The CLI maps this to exit 2.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A well-formed request whose result could not be produced. Exit 3 in the CLI.
class computation_error : public std::runtime_error {
public:
    explicit computation_error(const std::string& what) : std::runtime_error(what) {}
};

// Membership test undecidable at the available stream precision.
class precision_error : public computation_error {
public:
    explicit precision_error(const std::string& what) : computation_error(what) {}
};

// A bounded search ran out before reaching its target.
class not_found_error : public computation_error {
public:
    explicit not_found_error(const std::string& what) : computation_error(what) {}
};

}  // namespace padic
