#pragma once

#include <vector>

#include "dtilt/ba_tilt.hpp"
#include "dtilt/cli.hpp"
#include "dtilt/markov_chain.hpp"

namespace dtilt::cli {

/// Tables plus a verdict for commands that can fail a check.
struct CommandResult {
    std::vector<Table> tables;
    bool passed = true;
    std::string json;  // overrides render_json when non-empty
    std::string text;  // overrides the aligned table rendering when non-empty
};

// Parameter access; each throws ValidationError when the flag is missing.
ChainParams require_chain(const RunConfig& c);
DistortionLevel require_distortion(const RunConfig& c, const ChainParams& chain);
std::size_t require_n(const RunConfig& c);
double require_x(const RunConfig& c);

CommandResult cmd_jtilt(const RunConfig& c);
CommandResult cmd_stats(const RunConfig& c);
CommandResult cmd_pmf(const RunConfig& c);
CommandResult cmd_variance_table(const RunConfig& c);
CommandResult cmd_cgf(const RunConfig& c);
CommandResult cmd_rate(const RunConfig& c);
CommandResult cmd_tail(const RunConfig& c);
CommandResult cmd_simulate(const RunConfig& c);
CommandResult cmd_verify(const RunConfig& c);
CommandResult cmd_paper_tables(const RunConfig& c);
CommandResult cmd_figure(const RunConfig& c);

}  // namespace dtilt::cli
