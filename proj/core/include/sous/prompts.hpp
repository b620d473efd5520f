#pragma once

#include <map>
#include <string>

namespace sous {

// Root of the checked-in data directory (prompt templates, reference maps,
// palette). Resolution order: explicit set_data_dir, $SOUS_DATA_DIR, the
// compiled-in source-tree default.
std::string data_dir();
void set_data_dir(const std::string& path);

std::string read_text_file(const std::string& path);

// Loads data_dir()/prompts/<name> verbatim.
std::string load_prompt(const std::string& name);

// Replaces {key} placeholders. Unknown placeholders are left intact.
std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& slots);

}  // namespace sous
