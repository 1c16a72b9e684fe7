#ifndef QLENS_CHECK_HPP
#define QLENS_CHECK_HPP

#include <string>
#include <vector>

namespace qlens {

/** Outcome of a structured validation: ok plus human-readable failure notes. */
struct CheckReport {
    bool ok = true;
    std::vector<std::string> notes;

    void fail(const std::string& note) {
        ok = false;
        notes.push_back(note);
    }
    void merge(const CheckReport& o) {
        ok = ok && o.ok;
        notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    }
};

}  // namespace qlens

#endif
