#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dbx/error.hpp"

namespace testutil {

// Runs f and reports the dbx error code it threw, if any.
inline std::optional<dbx::ErrorCode> thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const dbx::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline std::string thrown_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const dbx::Error& e) {
        return e.what();
    }
    return {};
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    return cells;
}

// Column values of a CSV body (header skipped) by header name.
inline std::vector<double> csv_column(const std::string& text,
                                      const std::string& column) {
    auto lines = split_lines(text);
    if (lines.empty())
        return {};
    auto header = split_csv_row(lines.front());
    std::size_t idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column)
            idx = i;
    std::vector<double> out;
    if (idx == header.size())
        return out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto row = split_csv_row(lines[i]);
        if (idx < row.size())
            out.push_back(std::strtod(row[idx].c_str(), nullptr));
    }
    return out;
}

#ifdef DBX_TEST_TMPDIR
inline std::filesystem::path tmp_dir(const std::string& sub) {
    std::filesystem::path dir = std::filesystem::path(DBX_TEST_TMPDIR) / sub;
    std::filesystem::create_directories(dir);
    return dir;
}
#endif

#ifdef DBX_CLI_PATH
struct CliResult {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

// Runs the command-line tool with the given arguments, capturing combined
// output. extra_env is prepended verbatim (e.g. "DBX_TOL=1e-3").
inline CliResult run_cli(const std::string& args,
                         const std::filesystem::path& capture_dir,
                         const std::string& extra_env = {}) {
    static int counter = 0;
    std::filesystem::create_directories(capture_dir);
    std::filesystem::path log =
        capture_dir / ("cli_out_" + std::to_string(counter++) + ".log");
    std::string cmd;
    if (!extra_env.empty())
        cmd += "env " + extra_env + " ";
    cmd += std::string(DBX_CLI_PATH) + " " + args + " > " + log.string() +
           " 2>&1";
    int status = std::system(cmd.c_str());
    CliResult r;
    if (status >= 0 && WIFEXITED(status))
        r.exit_code = WEXITSTATUS(status);
    r.output = read_file(log);
    return r;
}
#endif

} // namespace testutil
