#include "qchd/channel_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qchd {

namespace {

using nlohmann::json;

json parse_text(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InvalidFile(std::string("invalid JSON: ") + e.what());
    }
}

const json &field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) {
        throw InvalidFile(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

std::size_t dimension(const json &j, const char *name) {
    const json &v = field(j, name);
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw InvalidFile(std::string("field '") + name + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

Complex complex_entry(const json &e) {
    if (e.is_number()) {
        return {e.get<double>(), 0.0};
    }
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    throw InvalidFile("matrix entry must be [re, im]");
}

ComplexMatrix complex_matrix(const json &rows, std::size_t expect_rows, std::size_t expect_cols,
                             const std::string &what) {
    if (!rows.is_array() || rows.size() != expect_rows) {
        throw InvalidFile(what + ": expected " + std::to_string(expect_rows) + " rows");
    }
    ComplexMatrix m(static_cast<Eigen::Index>(expect_rows), static_cast<Eigen::Index>(expect_cols));
    for (std::size_t i = 0; i < expect_rows; ++i) {
        if (!rows[i].is_array() || rows[i].size() != expect_cols) {
            throw InvalidFile(what + ": row " + std::to_string(i) + " must have " + std::to_string(expect_cols) +
                              " entries");
        }
        for (std::size_t j = 0; j < expect_cols; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = complex_entry(rows[i][j]);
        }
    }
    return m;
}

Eigen::MatrixXd real_matrix(const json &rows, const std::string &what) {
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty()) {
        throw InvalidFile(what + ": expected a nonempty list of rows");
    }
    const std::size_t cols = rows[0].size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != cols) {
            throw InvalidFile(what + ": ragged rows");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (!rows[i][j].is_number()) {
                throw InvalidFile(what + ": entries must be numbers");
            }
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
        }
    }
    return m;
}

json matrix_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidFile("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

KrausChannel parse_channel(const std::string &json_text) {
    json j = parse_text(json_text);
    std::size_t in = dimension(j, "in_dim");
    std::size_t out = dimension(j, "out_dim");
    const json &kraus = field(j, "kraus");
    if (!kraus.is_array() || kraus.empty()) {
        throw InvalidFile("field 'kraus' must be a nonempty list of matrices");
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < kraus.size(); ++k) {
        ops.push_back(complex_matrix(kraus[k], out, in, "kraus[" + std::to_string(k) + "]"));
    }
    return KrausChannel(in, out, std::move(ops));
}

CqChannel parse_cq_channel(const std::string &json_text) {
    json j = parse_text(json_text);
    std::size_t out = dimension(j, "out_dim");
    const json &alphabet = field(j, "alphabet");
    const json &states = field(j, "states");
    if (!alphabet.is_array() || alphabet.empty() || !states.is_object()) {
        throw InvalidFile("'alphabet' must be a nonempty list and 'states' an object");
    }
    std::vector<std::string> labels;
    std::vector<DensityMatrix> outputs;
    for (const auto &l : alphabet) {
        if (!l.is_string()) {
            throw InvalidFile("alphabet labels must be strings");
        }
        std::string label = l.get<std::string>();
        if (!states.contains(label)) {
            throw InvalidFile("no state for label '" + label + "'");
        }
        ComplexMatrix m = complex_matrix(states.at(label), out, out, "states[" + label + "]");
        try {
            outputs.emplace_back(m);
        } catch (const Error &e) {
            throw NotDensityMatrix("state '" + label + "': " + e.what());
        }
        labels.push_back(std::move(label));
    }
    return CqChannel(std::move(labels), std::move(outputs));
}

ClassicalChannelPair parse_classical_pair(const std::string &json_text) {
    json j = parse_text(json_text);
    return ClassicalChannelPair(real_matrix(field(j, "W"), "W"), real_matrix(field(j, "Wbar"), "Wbar"));
}

std::string channel_to_json(const KrausChannel &ch) {
    json j;
    j["in_dim"] = ch.in_dim();
    j["out_dim"] = ch.out_dim();
    j["kraus"] = json::array();
    for (const auto &k : ch.kraus()) {
        j["kraus"].push_back(matrix_json(k));
    }
    return j.dump(2) + "\n";
}

std::string cq_channel_to_json(const CqChannel &ch) {
    json j;
    j["alphabet"] = ch.alphabet();
    j["out_dim"] = ch.out_dim();
    j["states"] = json::object();
    for (std::size_t x = 0; x < ch.size(); ++x) {
        j["states"][ch.alphabet()[x]] = matrix_json(ch.outputs()[x].matrix());
    }
    return j.dump(2) + "\n";
}

KrausChannel load_channel(const std::filesystem::path &path) {
    return parse_channel(read_file(path));
}

CqChannel load_cq_channel(const std::filesystem::path &path) {
    return parse_cq_channel(read_file(path));
}

ClassicalChannelPair load_classical_pair(const std::filesystem::path &path) {
    return parse_classical_pair(read_file(path));
}

}  // namespace qchd
