// Command-line front end: reads a JSON configuration, runs one pipeline
// command, writes JSON/CSV artifacts.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhs/errors.hpp"
#include "qhs/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for hypergeometric correlator series"};
    app.set_help_all_flag("--help-all");

    std::string config_path;
    std::string command;
    std::string format = "json";
    std::string out_dir;
    int order = -1;
    int zorder = -1;
    std::uint64_t eps_seed = 0;
    bool have_seed = false;

    app.add_option("command", command,
                   "ifun | mirror | gw | verify-classp | recursion | flag-relations | oracle");
    app.add_option("--config", config_path, "path to the JSON configuration")->required();
    app.add_option("--order", order, "Novikov truncation (total degree)");
    app.add_option("--zorder", zorder, "z truncation of the double construction");
    app.add_option("--eps-seed", eps_seed, "seed for the torus parameters")
        ->each([&](const std::string&) { have_seed = true; });
    app.add_option("--format", format, "stdout format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_dir, "directory for <command>.json and <command>.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path);
        if (!in) throw qhs::ConfigError("cannot open configuration: " + config_path);
        nlohmann::json config = nlohmann::json::parse(in, nullptr, true, true);
        if (!command.empty()) {
            if (config.contains("command") && config["command"].is_string() &&
                config["command"].get<std::string>() != command)
                throw qhs::ConfigError("command line and configuration disagree on the command");
            config["command"] = command;
        }
        if (order >= 0) config["order"] = order;
        if (zorder >= 0) config["zorder"] = zorder;
        if (have_seed) config["eps_seed"] = eps_seed;

        qhs::RunResult result = qhs::run_config(config);

        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            std::string cmd = result.doc["command"].get<std::string>();
            std::ofstream js(out_dir + "/" + cmd + ".json");
            js << result.doc.dump(2) << "\n";
            std::ofstream cs(out_dir + "/" + cmd + ".csv");
            cs << result.csv;
        }
        if (format == "json")
            std::cout << result.doc.dump(2) << "\n";
        else
            std::cout << result.csv;
        return result.exit_code;
    } catch (const qhs::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const qhs::DomainError& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return 2;
    } catch (const qhs::ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const qhs::DegenerateParameterError& e) {
        std::cerr << "degenerate torus parameters: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
