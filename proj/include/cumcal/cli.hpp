#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cumcal {

enum ExitCode : int
{
    exit_ok = 0,
    exit_validation = 1,
    exit_io = 2,
};

/*
    Runs one command line. args excludes the program name. Subcommands:

        compute      --input F --bins M --strategy S [--json OUT] [--seed S]
        cumulative   --input F [--svg OUT] [--json OUT] [--seed S]
        reliability  --input F --bins M --strategy S [--bootstrap K] [--svg OUT] [--seed S]
        synth        --n N --grid G --calibration C --seed S --output F
        sweep-bins   --input F --bins 8,16,... [--csv OUT] [--svg OUT] [--seed S]
        sweep-n      --sizes 8192,... --realizations R --draws-per-bin D --seed S [--csv OUT] [--svg OUT]

    Summaries go to out; usage and error messages go to err. Output files are written only after every result has
    been computed, each through an atomic rename.
*/
auto run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) -> int;

} // namespace cumcal
