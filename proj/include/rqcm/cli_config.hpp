// Copyright 2026 The rqcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rqcm/errors.hpp"
#include "rqcm/io.hpp"

// JSON config files for CLI subcommands. A key names a long option of the
// subcommand; values fill only options absent from the command line, so
// flags win. Unknown keys are errors.

namespace rqcm::cli {

inline std::string config_scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw InputError("config values must be scalars or arrays of scalars");
}

inline nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw InputError("config file must hold a JSON object");
    return j;
}

inline void apply_config(CLI::App& sub, const nlohmann::json& cfg) {
    for (const auto& [key, value] : cfg.items()) {
        if (key == "config") throw InputError("config files cannot nest 'config'");
        CLI::Option* opt = sub.get_option_no_throw("--" + key);
        if (opt == nullptr) throw InputError("unknown config key '" + key + "' for subcommand " + sub.get_name());
        if (opt->count() > 0) continue;
        if (value.is_array()) {
            std::vector<std::string> items;
            for (const auto& v : value) items.push_back(config_scalar(v));
            opt->add_result(items);
        } else {
            opt->add_result(config_scalar(value));
        }
        opt->run_callback();
    }
}

/// Every long option of the subcommand with its resolved value. Values that
/// parse as JSON keep their type; lists become arrays. Worker count and
/// output path do not affect results and are left out.
inline ojson resolved_config(const CLI::App& sub) {
    const CLI::Option* current = nullptr;
    auto typed = [&current](const std::string& s) -> ojson {
        if (s.empty()) return nullptr;
        if (current->get_type_name().rfind("TEXT", 0) == 0) return s;
        try {
            return ojson::parse(s);
        } catch (const nlohmann::json::parse_error&) {
            return s;
        }
    };
    ojson out;
    out["subcommand"] = sub.get_name();
    for (const CLI::Option* opt : sub.get_options()) {
        const auto& lnames = opt->get_lnames();
        if (lnames.empty() || lnames.front() == "help" || lnames.front() == "config" ||
            lnames.front() == "workers" || lnames.front() == "output") {
            continue;
        }
        const std::string name = lnames.front();
        current = opt;
        if (opt->count() == 0) {
            const std::string def = opt->get_default_str();
            if (opt->get_expected_max() == 0) {
                out[name] = def.empty() ? ojson(false) : typed(def);
            } else if (opt->get_items_expected_max() > 1 && (def.empty() || def == "{}")) {
                out[name] = ojson::array();
            } else {
                out[name] = typed(def);
            }
            continue;
        }
        const auto& res = opt->results();
        if (opt->get_items_expected_max() > 1) {
            ojson arr = ojson::array();
            for (const auto& r : res) arr.push_back(typed(r));
            out[name] = std::move(arr);
        } else if (res.empty() || res.back().empty()) {
            out[name] = true;  // bare flag
        } else {
            out[name] = typed(res.back());
        }
    }
    return out;
}

}  // namespace rqcm::cli
