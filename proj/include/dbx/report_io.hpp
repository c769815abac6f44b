#pragma once

#include <filesystem>
#include <string>

#include "dbx/breadth.hpp"
#include "dbx/classify.hpp"
#include "dbx/frames.hpp"
#include "dbx/verify.hpp"

namespace dbx {

// Serializers. All numeric text uses 17 significant digits so outputs are
// byte-identical across runs of the same scenario.
std::string frame_csv(const FrameField& field);
std::string trajectory_csv(const BreadthPair& pair);
std::string pair_obj(const BreadthPair& pair);
std::string verification_json(const std::string& scenario,
                              const VerificationReport& rep);
std::string classification_json(const std::string& scenario,
                                const CurveClass& cls);
std::string frame_check_json(const std::string& scenario,
                             const CheckResult& check);

/// Run info (timestamp, command); the only output that is not byte-stable,
/// kept out of the data files on purpose.
std::string run_metadata(const std::string& scenario_name,
                         const std::string& command);

/// Writes to <path>.tmp in the target directory, then renames over <path>.
/// Parent directories are created as needed.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

} // namespace dbx
