#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gdpcast/evaluation.hpp"
#include "gdpcast/series.hpp"
#include "gdpcast/unitroot.hpp"
#include "run_config.hpp"

namespace gdpcast::app {

/// Failure inside a named pipeline stage.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Files are written under `<out>.partial` and moved into `out` by commit().
/// Destruction without commit removes everything written.
class OutputStage {
public:
    explicit OutputStage(std::filesystem::path out);
    ~OutputStage();
    OutputStage(const OutputStage&) = delete;
    OutputStage& operator=(const OutputStage&) = delete;

    [[nodiscard]] std::filesystem::path file(const std::string& name) const;
    void write(const std::string& name, const std::string& contents) const;
    void commit();

private:
    std::filesystem::path out_;
    std::filesystem::path staging_;
    bool committed_ = false;
};

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

DescriptiveStats cmd_describe(const RunConfig& config, std::ostream& log);
AdfResult cmd_adf(const RunConfig& config, std::ostream& log);
void cmd_sarima(const RunConfig& config, std::ostream& log);
void cmd_lstm(const RunConfig& config, std::ostream& log);
eval::ComparisonReport cmd_compare(const RunConfig& config, std::ostream& log);

}  // namespace gdpcast::app
