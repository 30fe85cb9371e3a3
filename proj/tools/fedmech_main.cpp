#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fedmech/cli.hpp"
#include "fedmech/errors.hpp"

namespace {

std::string manifest_dir(const std::string& manifest_path) {
    auto parent = std::filesystem::path(manifest_path).parent_path();
    return parent.empty() ? std::string(".") : parent.string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fedmech: incentive-aware federated learning mechanism simulator"};
    app.require_subcommand(1);

    std::string run_manifest_path;
    std::string out_override;
    int jobs_override = 0;
    std::string seeds_override;

    auto* run_cmd = app.add_subcommand("run", "execute a run manifest");
    run_cmd->add_option("manifest", run_manifest_path, "manifest file")->required();
    run_cmd->add_option("--out", out_override, "output directory (overrides manifest)");
    run_cmd->add_option("--jobs", jobs_override, "parallel jobs (overrides manifest)");
    run_cmd->add_option("--seeds", seeds_override, "comma-separated seed list (overrides manifest)");

    std::string check_manifest_path;
    auto* check_cmd = app.add_subcommand("check", "validate scenarios and print local optima");
    check_cmd->add_option("manifest", check_manifest_path, "manifest file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            fedmech::RunManifest manifest = fedmech::parse_manifest(run_manifest_path);
            if (!out_override.empty()) manifest.out_dir = out_override;
            if (jobs_override > 0) manifest.jobs = jobs_override;
            if (!seeds_override.empty()) {
                manifest.seeds.clear();
                std::size_t pos = 0;
                while (pos <= seeds_override.size()) {
                    auto comma = seeds_override.find(',', pos);
                    std::string tok = seeds_override.substr(
                        pos, comma == std::string::npos ? std::string::npos : comma - pos);
                    if (!tok.empty()) manifest.seeds.push_back(std::stoull(tok));
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
            }
            return fedmech::run_batch(manifest, manifest_dir(run_manifest_path));
        }
        fedmech::RunManifest manifest = fedmech::parse_manifest(check_manifest_path);
        return fedmech::check_batch(manifest, manifest_dir(check_manifest_path));
    } catch (const fedmech::ConfigError& e) {
        std::cerr << "fedmech: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fedmech: " << e.what() << "\n";
        return 1;
    }
}
