#include "sbc/codec.hpp"

#include <json.hpp>
#include <sstream>

#include "sbc/errors.hpp"

namespace sbc {

using json = nlohmann::ordered_json;

std::string encode_cube(const Cube& c) {
    check_wellformed(c);
    json j;
    j["n"] = c.n;
    j["start"] = c.start;
    bool all_true = true;
    for (const auto& g : c.mask) all_true = all_true && g.all();
    if (!all_true) {
        json m = json::array();
        for (int k = 0; k < c.n; ++k) {
            json lk = json::array();
            for (int i = 0; i < c.n; ++i) {
                json row = json::array();
                for (int j2 = 0; j2 < c.n; ++j2) row.push_back(c.mask[k](i, j2) ? 1 : 0);
                lk.push_back(row);
            }
            m.push_back(lk);
        }
        j["mask"] = m;
    }
    json layers = json::array();
    for (int k = 0; k < c.n; ++k) {
        json lk = json::array();
        for (int i = 0; i < c.n; ++i) {
            json row = json::array();
            for (int j2 = 0; j2 < c.n; ++j2) row.push_back(c.layer[k](i, j2));
            lk.push_back(row);
        }
        layers.push_back(lk);
    }
    j["layers"] = layers;
    return j.dump(2) + "\n";
}

namespace {

std::string locus(int k, int i, int j) {
    std::ostringstream os;
    os << "[" << k << "][" << i << "][" << j << "]";
    return os.str();
}

}  // namespace

Cube decode_cube_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("cube document: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("cube document: top level must be an object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw parse_error("cube document: missing integer field \"n\"");
    int n = j["n"].get<int>();
    if (n <= 0) throw parse_error("field \"n\": must be positive");
    Int start = 0;
    if (j.contains("start")) {
        if (!j["start"].is_number_integer())
            throw parse_error("field \"start\": must be an integer");
        start = j["start"].get<Int>();
        if (start < 0) throw parse_error("field \"start\": negative start");
    }
    Cube c(n, start);
    auto read3 = [&](const json& arr, const char* name, auto&& cell) {
        if (!arr.is_array() || (int)arr.size() != n)
            throw parse_error(std::string("field \"") + name + "\": expected " +
                              std::to_string(n) + " layers");
        for (int k = 0; k < n; ++k) {
            const json& lk = arr[k];
            if (!lk.is_array() || (int)lk.size() != n)
                throw parse_error(std::string(name) + "[" + std::to_string(k) +
                                  "]: expected " + std::to_string(n) + " rows");
            for (int i = 0; i < n; ++i) {
                const json& row = lk[i];
                if (!row.is_array() || (int)row.size() != n)
                    throw parse_error(std::string(name) + "[" + std::to_string(k) + "][" +
                                      std::to_string(i) + "]: expected " +
                                      std::to_string(n) + " entries");
                for (int jj = 0; jj < n; ++jj) {
                    if (!row[jj].is_number_integer())
                        throw parse_error(std::string(name) + locus(k, i, jj) +
                                          ": expected an integer");
                    cell(k, i, jj, row[jj].get<Int>());
                }
            }
        }
    };
    if (j.contains("mask"))
        read3(j["mask"], "mask", [&](int k, int i, int jj, Int v) {
            if (v != 0 && v != 1)
                throw parse_error("mask" + locus(k, i, jj) + ": expected 0 or 1");
            c.mask[k](i, jj) = (v == 1);
        });
    if (!j.contains("layers")) throw parse_error("cube document: missing field \"layers\"");
    read3(j["layers"], "layers", [&](int k, int i, int jj, Int v) {
        if (v < 0) throw parse_error("layers" + locus(k, i, jj) + ": negative entry");
        c.layer[k](i, jj) = v;
    });
    for (const auto& key : j.items())
        if (key.key() != "n" && key.key() != "start" && key.key() != "mask" &&
            key.key() != "layers")
            throw parse_error("cube document: unknown field \"" + key.key() + "\"");
    try {
        check_wellformed(c);
    } catch (const structural_error& e) {
        throw parse_error(std::string("cube document: ") + e.what());
    }
    return c;
}

std::string encode_cube_text(const Cube& c) {
    check_wellformed(c);
    std::ostringstream os;
    for (int k = 0; k < c.n; ++k) {
        if (k) os << "\n";
        for (int i = 0; i < c.n; ++i) {
            for (int j = 0; j < c.n; ++j) {
                if (j) os << " ";
                if (c.mask[k](i, j))
                    os << c.layer[k](i, j);
                else
                    os << ".";
            }
            os << "\n";
        }
    }
    return os.str();
}

Cube decode_cube_text(const std::string& text) {
    std::vector<std::vector<std::vector<std::string>>> grids;  // [grid][row][tok]
    std::vector<std::vector<std::string>> cur;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) {
            if (!cur.empty()) {
                grids.push_back(cur);
                cur.clear();
            }
            continue;
        }
        cur.push_back(toks);
    }
    if (!cur.empty()) grids.push_back(cur);
    if (grids.empty()) throw parse_error("text cube: no layers found");
    const int n = (int)grids.size();
    Cube c(n, 0);
    for (int k = 0; k < n; ++k) {
        if ((int)grids[k].size() != n)
            throw parse_error("text cube: layer " + std::to_string(k + 1) + " has " +
                              std::to_string(grids[k].size()) + " rows, expected " +
                              std::to_string(n));
        for (int i = 0; i < n; ++i) {
            if ((int)grids[k][i].size() != n)
                throw parse_error("text cube: layer " + std::to_string(k + 1) + " row " +
                                  std::to_string(i + 1) + ": expected " +
                                  std::to_string(n) + " entries");
            for (int j = 0; j < n; ++j) {
                const std::string& tok = grids[k][i][j];
                if (tok == ".") {
                    c.mask[k](i, j) = false;
                    continue;
                }
                try {
                    size_t pos = 0;
                    long long v = std::stoll(tok, &pos);
                    if (pos != tok.size()) throw std::invalid_argument(tok);
                    if (v < 0)
                        throw parse_error("text cube: negative entry at layer " +
                                          std::to_string(k + 1));
                    c.layer[k](i, j) = v;
                } catch (const std::invalid_argument&) {
                    throw parse_error("text cube: bad token \"" + tok + "\" at layer " +
                                      std::to_string(k + 1) + " row " + std::to_string(i + 1));
                } catch (const std::out_of_range&) {
                    throw parse_error("text cube: entry out of range at layer " +
                                      std::to_string(k + 1));
                }
            }
        }
    }
    return c;
}

Cube decode_cube(const std::string& text) {
    for (char ch : text) {
        if (std::isspace((unsigned char)ch)) continue;
        if (ch == '{') return decode_cube_json(text);
        break;
    }
    return decode_cube_text(text);
}

}  // namespace sbc
