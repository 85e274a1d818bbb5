// Abstract description of a toric P^1-chain (Bott tower).
//
// A chain of length ell is determined by two sets of integers:
//   - twists c(j, i) for j > i, the pairings of the stage-j coroot with the
//     pulled-back stage-i root;
//   - weights l(i), the values of the line-bundle weight on the stage-i coroot.
//
// Indices in this API are 0-based: index 0 is the innermost factor G_1 and the
// recursions L_j = sum_{i<j} c(j,i) J_i run over lower indices. The spec file
// format is 1-based (see parse_chain_spec).

#ifndef PCHAIN_CORE_HPP
#define PCHAIN_CORE_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pchain {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or structurally invalid chain specification.
class SpecError : public Error {
public:
    using Error::Error;
};

/// An operation that needs the positivity condition was given a spec that
/// violates it.
class NotPositiveError : public Error {
public:
    NotPositiveError() : Error("spec not positive") {}
};

class ChainSpec {
public:
    /// Twist entries keyed by 1-based (j, i) with j > i. Missing entries are 0.
    using TwistMap = std::map<std::pair<int, int>, int>;

    ChainSpec(std::vector<int> weights, const TwistMap& twists);

    std::size_t length() const { return weights_.size(); }

    /// l_i, 0-based.
    int weight(std::size_t i) const { return weights_[i]; }
    const std::vector<int>& weights() const { return weights_; }

    /// c_ji, 0-based; zero unless j > i.
    int twist(std::size_t j, std::size_t i) const
    {
        return j > i ? twists_[j * length() + i] : 0;
    }

    /// Nonzero twists keyed by 1-based (j, i), ordered lexicographically.
    TwistMap nonzero_twists() const;

    bool is_product() const;

    friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

private:
    std::vector<int> weights_;
    std::vector<int> twists_;  // dense ell x ell, row j, column i
};

struct Diagnostics {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool usable() const { return errors.empty(); }
};

/// Parse the JSON spec document
///     {"ell": 2, "c": [{"j": 2, "i": 1, "v": 1}], "l": [3, 5]}
/// Throws SpecError on malformed text, non-integer entries, twist indices with
/// i >= j or outside 1..ell, duplicate twists, or a weight-count mismatch.
ChainSpec parse_chain_spec(const std::string& text);

/// Read and parse a spec file.
ChainSpec load_chain_spec(const std::string& path);

/// Canonical single-line serialization; twists ordered by (j, i), zero twists
/// omitted.
std::string serialize(const ChainSpec& spec);

Diagnostics validate(const ChainSpec& spec);

}  // namespace pchain

#endif
