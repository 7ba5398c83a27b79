#include "paretoprec/io.hpp"

#include <fstream>
#include <utility>

#include <json.hpp>

namespace paretoprec {

namespace {

using nlohmann::json;

json matrix_part(const CMatrix& m, bool imag) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_parts(const json& re, const json& im, std::size_t rows, std::size_t cols,
                          const char* what) {
    if (!re.is_array() || !im.is_array() || re.size() != rows || im.size() != rows)
        throw IoError(std::string(what) + ": real/imag row counts do not match m_tx");
    std::vector<cxd> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& rr = re.at(i);
        const json& ri = im.at(i);
        if (!rr.is_array() || !ri.is_array() || rr.size() != cols || ri.size() != cols)
            throw IoError(std::string(what) + ": ragged or mismatched real/imag rows");
        for (std::size_t j = 0; j < cols; ++j)
            entries.emplace_back(rr.at(j).get<double>(), ri.at(j).get<double>());
    }
    try {
        return CMatrix::checked(rows, cols, std::move(entries));
    } catch (const InvalidInput& e) {
        throw IoError(std::string(what) + ": " + e.what());
    }
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw IoError("malformed JSON");
    return j;
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw IoError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw IoError(std::string("field \"") + key + "\" has the wrong type");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

}  // namespace

std::string channel_to_json(const ChannelInstance& c) {
    json j;
    j["m_tx"] = c.m_tx();
    j["m_ue"] = c.m_ue();
    j["h_real"] = matrix_part(c.h, false);
    j["h_imag"] = matrix_part(c.h, true);
    j["omega"] = c.omega;
    j["beta"] = c.beta;
    return j.dump(2);
}

ChannelInstance channel_from_json(const std::string& text) {
    const json j = parse(text);
    const auto m_tx = field<std::size_t>(j, "m_tx");
    const auto m_ue = field<std::size_t>(j, "m_ue");
    if (!j.contains("h_real") || !j.contains("h_imag"))
        throw IoError("missing field \"h_real\" or \"h_imag\"");
    CMatrix h = matrix_from_parts(j.at("h_real"), j.at("h_imag"), m_tx, m_ue, "channel");
    auto omega = field<std::vector<double>>(j, "omega");
    auto beta = field<std::vector<double>>(j, "beta");
    try {
        return make_channel(std::move(h), std::move(omega), std::move(beta));
    } catch (const InvalidInput& e) {
        throw IoError(std::string("channel: ") + e.what());
    }
}

void save_channel(const ChannelInstance& c, const std::string& path) {
    write_file(path, channel_to_json(c) + "\n");
}

ChannelInstance load_channel(const std::string& path) {
    return channel_from_json(read_file(path));
}

std::string precoder_to_json(const Precoder& p) {
    json j;
    j["m_tx"] = p.rows();
    j["m_ue"] = p.cols();
    j["p_real"] = matrix_part(p, false);
    j["p_imag"] = matrix_part(p, true);
    return j.dump(2);
}

Precoder precoder_from_json(const std::string& text) {
    const json j = parse(text);
    const auto m_tx = field<std::size_t>(j, "m_tx");
    const auto m_ue = field<std::size_t>(j, "m_ue");
    if (!j.contains("p_real") || !j.contains("p_imag"))
        throw IoError("missing field \"p_real\" or \"p_imag\"");
    return matrix_from_parts(j.at("p_real"), j.at("p_imag"), m_tx, m_ue, "precoder");
}

void save_precoder(const Precoder& p, const std::string& path) {
    write_file(path, precoder_to_json(p) + "\n");
}

Precoder load_precoder(const std::string& path) {
    return precoder_from_json(read_file(path));
}

}  // namespace paretoprec
