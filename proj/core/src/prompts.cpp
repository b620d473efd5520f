#include "sous/prompts.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sous {

namespace {
std::string g_data_dir;  // set_data_dir override
}

#ifndef SOUS_DATA_DIR
#define SOUS_DATA_DIR "data"
#endif

std::string data_dir() {
    if (!g_data_dir.empty()) return g_data_dir;
    if (const char* env = std::getenv("SOUS_DATA_DIR"); env && *env) return env;
    return SOUS_DATA_DIR;
}

void set_data_dir(const std::string& path) { g_data_dir = path; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string load_prompt(const std::string& name) {
    return read_text_file(data_dir() + "/prompts/" + name);
}

std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& slots) {
    std::string out;
    out.reserve(tpl.size());
    size_t i = 0;
    while (i < tpl.size()) {
        if (tpl[i] == '{') {
            size_t close = tpl.find('}', i + 1);
            if (close != std::string::npos) {
                std::string key = tpl.substr(i + 1, close - i - 1);
                auto it = slots.find(key);
                if (it != slots.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += tpl[i++];
    }
    return out;
}

}  // namespace sous
