#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <stdexcept>
#include <string>

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with a shell-quoted argument string; stderr is discarded.
inline CliResult run_cli(const std::string& exe, const std::string& args) {
    const std::string cmd = "'" + exe + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed");
    CliResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}
