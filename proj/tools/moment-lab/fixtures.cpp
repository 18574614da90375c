#include "fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include <momentlab/real.hpp>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace momentlab;

namespace moment_lab {

std::optional<fs::path> fixture_dir(const std::string& flag) {
    if (!flag.empty()) return fs::path(flag);
    if (const char* env = std::getenv("MOMENT_LAB_FIXTURES"); env && *env) return fs::path(env);
    return std::nullopt;
}

fs::path fixture_path(const fs::path& dir, int weight) {
    return dir / ("weight_" + std::to_string(weight) + ".json");
}

void write_fixture(const fs::path& file, const FormSpace& space) {
    ordered_json j;
    j["weight"] = space.weight;
    j["dim"] = space.forms.size();
    j["n_max"] = space.n_max;
    j["c_max"] = space.c_max;
    j["prec_bits"] = working_prec();
    j["condition"] = space.weights.condition.to_string();
    j["c_used"] = space.weights.c_used;
    auto forms = ordered_json::array();
    for (size_t i = 0; i < space.forms.size(); ++i) {
        const auto& f = space.forms[i];
        ordered_json e;
        auto lam = ordered_json::array();
        for (const auto& l : f.lambda) lam.push_back(l.to_string());
        e["lambda"] = std::move(lam);
        e["omega"] = f.omega.to_string();
        e["omega_error"] = i < space.weights.omega_error_bound.size()
                               ? space.weights.omega_error_bound[i].to_string()
                               : std::string("0");
        e["L_half"] = f.central_value.to_string();
        e["sym2"] = f.sym2_at_1.to_string();
        forms.push_back(std::move(e));
    }
    j["eigenforms"] = std::move(forms);

    fs::create_directories(file.parent_path());
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write fixture " + tmp.string());
        out << j.dump(2) << "\n";
    }
    fs::rename(tmp, file);
}

std::optional<FormSpace> read_fixture(const fs::path& file, int weight, int n_max, long c_max) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("malformed fixture " + file.string() + ": " + e.what());
    }
    if (j.at("weight").get<int>() != weight || j.at("n_max").get<int>() != n_max ||
        j.at("c_max").get<long>() != c_max || j.at("prec_bits").get<int>() != working_prec())
        return std::nullopt;

    FormSpace space;
    space.weight = weight;
    space.n_max = n_max;
    space.c_max = c_max;
    space.weights.condition = Real(j.at("condition").get<std::string>());
    space.weights.c_used = j.at("c_used").get<long>();
    for (const auto& e : j.at("eigenforms")) {
        HeckeEigenform f;
        f.weight = weight;
        for (const auto& l : e.at("lambda")) f.lambda.emplace_back(l.get<std::string>());
        f.omega = Real(e.at("omega").get<std::string>());
        f.central_value = Real(e.at("L_half").get<std::string>());
        f.sym2_at_1 = Real(e.at("sym2").get<std::string>());
        space.weights.omega.push_back(f.omega);
        space.weights.omega_error_bound.emplace_back(e.at("omega_error").get<std::string>());
        space.forms.push_back(std::move(f));
    }
    if (space.forms.size() != j.at("dim").get<size_t>())
        throw std::runtime_error("fixture " + file.string() + ": dim does not match eigenform count");
    return space;
}

}  // namespace moment_lab
