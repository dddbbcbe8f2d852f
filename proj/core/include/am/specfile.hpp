#pragma once

#include <stdexcept>
#include <string>

#include "am/bundle.hpp"

namespace am {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed external target: either a bare chart or a bundle spec.
struct ParsedTarget {
    std::string name;
    bool is_bundle = false;
    Chart chart;       // when !is_bundle
    BundleSpec bundle;  // when is_bundle; invariants re-validated on load
};

// Loads a JSON target document.  Schemas:
//   amver-chart/1:  { schema, name, dim, domain: [[lo,hi],...], metric: [expr...] }
//   amver-bundle/1: { schema, name, factors: [{zoo: name} | inline], b, a,
//                     potentials: [[expr...]...] }
// An inline factor carries name, dim, domain, metric, J (expression lists,
// row-major) and c.  All expressions follow the Expr grammar.
ParsedTarget load_spec_file(const std::string& path);
ParsedTarget parse_spec_text(const std::string& text);

}  // namespace am
