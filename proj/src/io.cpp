#include "ainfty/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ainfty {

namespace {

using nlohmann::json;

std::array<double, 2> parse_box_axis(const json& jb, std::size_t axis) {
    if (!jb.is_array() || jb.size() < axis + 1 || !jb[axis].is_array() || jb[axis].size() != 2)
        throw Error(errc::invalid_weight, "box must be [[lo,hi],...]");
    return {jb[axis][0].get<double>(), jb[axis][1].get<double>()};
}

std::vector<double> floor_values(std::vector<double> v, bool apply_floor, bool* floored) {
    if (floored) *floored = false;
    for (double& x : v) {
        if (!(x > 0.0) || x < kWeightFloor) {
            if (!apply_floor)
                throw Error(errc::invalid_weight,
                            "non-positive value (rerun with the floor enabled to clamp)");
            if (!(x > kWeightFloor)) {
                x = kWeightFloor;
                if (floored) *floored = true;
            }
        }
    }
    return v;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_failure, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_failure, "cannot write " + path);
    out << content;
}

WeightGrid parse_weight_json(const std::string& text, bool apply_floor, bool* floored) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(errc::invalid_weight, std::string("bad JSON: ") + e.what());
    }
    if (!j.contains("dim") || !j.contains("cells") || !j.contains("values"))
        throw Error(errc::invalid_weight, "weight file needs dim, cells, values");
    const int dim = j["dim"].get<int>();
    if (dim != 1 && dim != 2) throw Error(errc::invalid_weight, "dim must be 1 or 2");
    const auto& jc = j["cells"];
    if (!jc.is_array() || jc.empty()) throw Error(errc::invalid_weight, "cells must be an array");
    const std::int64_t n = jc[0].get<std::int64_t>();
    if (dim == 2 && (jc.size() != 2 || jc[1].get<std::int64_t>() != n))
        throw Error(errc::invalid_weight, "2D grids must be square");

    std::array<double, 2> lo{0.0, 0.0}, hi{1.0, 1.0};
    if (j.contains("box")) {
        const auto a0 = parse_box_axis(j["box"], 0);
        lo[0] = a0[0];
        hi[0] = a0[1];
        if (dim == 2) {
            const auto a1 = parse_box_axis(j["box"], 1);
            lo[1] = a1[0];
            hi[1] = a1[1];
        }
    }
    std::vector<double> values;
    for (const auto& v : j["values"]) values.push_back(v.get<double>());
    try {
        return WeightGrid(Grid(dim, n, lo, hi),
                          floor_values(std::move(values), apply_floor, floored));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(errc::invalid_weight, e.what());
    }
}

WeightGrid load_weight(const std::string& path, bool apply_floor, bool* floored) {
    const std::string text = read_file(path);
    // CSV: 1D, one value per line, unit box.
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw Error(errc::invalid_weight, "empty weight file");
    if (text[first] != '{') {
        std::vector<double> values;
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            try {
                values.push_back(std::stod(line));
            } catch (...) {
                throw Error(errc::invalid_weight, "bad CSV line: " + line);
            }
        }
        if (values.empty()) throw Error(errc::invalid_weight, "empty CSV weight");
        const auto n = static_cast<std::int64_t>(values.size());
        return WeightGrid(Grid::unit(1, n), floor_values(std::move(values), apply_floor, floored));
    }
    return parse_weight_json(text, apply_floor, floored);
}

std::string weight_to_json(const WeightGrid& w) {
    nlohmann::ordered_json j;
    const Grid& g = w.grid();
    j["dim"] = g.dim();
    j["cells"] = g.dim() == 1 ? json::array({g.cells_per_axis()})
                              : json::array({g.cells_per_axis(), g.cells_per_axis()});
    json box = json::array();
    for (int a = 0; a < g.dim(); ++a) box.push_back(json::array({g.lo(a), g.hi(a)}));
    j["box"] = box;
    j["values"] = w.values();
    return j.dump();
}

void save_weight(const WeightGrid& w, const std::string& path) {
    write_file(path, weight_to_json(w) + "\n");
}

WeightSpec parse_weight_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(errc::invalid_spec, std::string("bad JSON: ") + e.what());
    }
    WeightSpec spec;
    if (j.contains("dim")) spec.dim = j["dim"].get<int>();
    if (j.contains("cells")) {
        if (j["cells"].is_array())
            spec.cells_per_axis = j["cells"][0].get<std::int64_t>();
        else
            spec.cells_per_axis = j["cells"].get<std::int64_t>();
    }
    if (j.contains("box")) {
        const auto a0 = parse_box_axis(j["box"], 0);
        spec.lo[0] = a0[0];
        spec.hi[0] = a0[1];
        if (spec.dim == 2) {
            const auto a1 = parse_box_axis(j["box"], 1);
            spec.lo[1] = a1[0];
            spec.hi[1] = a1[1];
        }
    }
    if (!j.contains("kind")) throw Error(errc::invalid_spec, "spec needs a kind");
    const std::string kind = j["kind"].get<std::string>();
    auto get_or = [&](const char* key, double dflt) {
        return j.contains(key) ? j[key].get<double>() : dflt;
    };
    if (kind == "CONSTANT") {
        spec.kind = ConstantSpec{get_or("c", 1.0)};
    } else if (kind == "POWER") {
        spec.kind = PowerSpec{get_or("a", 0.5), get_or("center", 0.5)};
    } else if (kind == "STEP") {
        if (!j.contains("levels") || !j["levels"].is_array())
            throw Error(errc::invalid_spec, "STEP needs levels");
        StepSpec st;
        for (const auto& v : j["levels"]) st.levels.push_back(v.get<double>());
        spec.kind = st;
    } else if (kind == "SPIKE") {
        SpikeSpec sp;
        sp.eps = get_or("eps", 1e-6);
        sp.peak = get_or("peak", 1.0);
        sp.position = j.contains("position") ? j["position"].get<std::int64_t>() : -1;
        spec.kind = sp;
    } else if (kind == "MONOTONE") {
        spec.kind = MonotoneSpec{get_or("ratio", 2.0)};
    } else if (kind == "LOGNORMAL") {
        LognormalSpec ln;
        ln.seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;
        ln.sigma = get_or("sigma", 1.0);
        spec.kind = ln;
    } else {
        throw Error(errc::invalid_spec, "unknown kind: " + kind);
    }
    return spec;
}

WeightSpec load_weight_spec(const std::string& path) {
    return parse_weight_spec(read_file(path));
}

std::vector<WeightSpec> parse_weight_manifest(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(errc::invalid_spec, std::string("bad JSON: ") + e.what());
    }
    if (!j.is_array()) throw Error(errc::invalid_spec, "manifest must be a JSON array");
    std::vector<WeightSpec> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(parse_weight_spec(item.dump()));
    return out;
}

}  // namespace ainfty
