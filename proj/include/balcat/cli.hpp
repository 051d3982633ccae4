#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace balcat::cli {

/// Runs one command. `args` excludes the program name. Results go to `out`
/// unless the command was given --out; diagnostics go to `err`.
///
/// Exit status: 0 on success or a true predicate, 1 for a false predicate or a
/// failing law (the witness is part of the output), 2 for unreadable or
/// invalid input and for size-guard refusals.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace balcat::cli
