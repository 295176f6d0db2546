#ifndef MODCRIT_FIXTURE_HPP
#define MODCRIT_FIXTURE_HPP

#include <map>
#include <string>
#include <vector>

#include "modcrit/frobenius.hpp"
#include "modcrit/module.hpp"
#include "modcrit/ring.hpp"

namespace modcrit {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t line, size_t col)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    size_t line, col;
};

/// One fixture file: a ring with declared prime data plus named modules,
/// endomorphisms, multiplicative sets, candidate lists and expected verdicts.
struct FixtureDocument {
    RingFixture fixture;
    std::vector<ModulePresentation> modules;
    std::vector<EndomorphismSpec> endos;
    std::vector<MultiplicativeSet> multsets;
    std::vector<RingMapDecl> ringmaps;
    std::vector<std::pair<std::string, std::vector<std::string>>> candidates;
    std::vector<std::pair<std::string, std::string>> expectations;
    std::string source_path;
    std::string digest;

    const ModulePresentation* find_module(const std::string& label) const;
    const EndomorphismSpec* find_endo(const std::string& label) const;
    const MultiplicativeSet* find_multset(const std::string& label) const;
    const RingMapDecl* find_ringmap(const std::string& label) const;
    /// Candidate list by name; falls back to every declared prime.
    std::vector<const PrimeDecl*> candidate_primes(const std::string& name) const;
    const std::string* expected(const std::string& key) const;
};

FixtureDocument parse_fixture(const std::string& text, const std::string& path = "<memory>");
FixtureDocument load_fixture(const std::string& path);
/// Canonical text form; corpus files round-trip byte-exactly through this.
std::string serialize_fixture(const FixtureDocument& doc);

}  // namespace modcrit

#endif
