#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <coxkit/diagram.hpp>

namespace testutil {

inline std::string data_file(const std::string& name) {
    return std::string(COXKIT_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Chain with nodes s1..s(n+1) and the given consecutive labels; 0 means inf.
inline coxkit::CoxeterDiagram chain(const std::vector<unsigned>& labels,
                                    const std::string& t_nodes = "") {
    std::string text;
    for (std::size_t i = 0; i <= labels.size(); ++i)
        text += "node s" + std::to_string(i + 1) + "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        text += "edge s" + std::to_string(i + 1) + " s" + std::to_string(i + 2) + " " +
                (labels[i] == 0 ? "inf" : std::to_string(labels[i])) + "\n";
    }
    if (!t_nodes.empty()) text += "T " + t_nodes + "\n";
    return coxkit::parse_diagram(text);
}

}  // namespace testutil
