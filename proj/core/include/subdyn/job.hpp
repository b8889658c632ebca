#pragma once

#include "subdyn/dynamics.hpp"
#include "subdyn/parse.hpp"

#include <optional>
#include <string>

namespace subdyn {

// A validated job file: ambient space, coefficient field, variable names and
// the optional morphism/variety blocks, with every polynomial parsed in the
// declared ring before any computation starts.
struct JobFile {
    unsigned ambient = 0;
    FieldPtr field;
    RingPtr ring;
    std::vector<std::string> morphism_text;
    std::vector<std::string> variety_text;
    std::optional<Morphism> morphism;
    std::optional<Subvariety> variety;
};

JobFile load_job(const std::string& path);
JobFile parse_job_text(const std::string& json_text);

} // namespace subdyn
