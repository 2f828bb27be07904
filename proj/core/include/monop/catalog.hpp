#pragma once

// Built-in operator catalog with the expected classification of each entry.

#include <optional>
#include <string>
#include <vector>

#include "monop/symbols.hpp"
#include "monop/verdict.hpp"

namespace monop::catalog {

struct CatalogEntry {
    std::string name;
    symbols::MonomialSpec spec;
    std::string weight_text;  // closed form for h(s), as parseable text
    Verdict expected;
    std::string description;
};

const std::vector<CatalogEntry>& builtin();
std::optional<CatalogEntry> find(const std::string& name);

}  // namespace monop::catalog
