#ifndef MODCRIT_CACHE_HPP
#define MODCRIT_CACHE_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "modcrit/groebner.hpp"

namespace modcrit {

std::string fnv1a64_hex(const std::string& data);

std::string order_to_string(const MonomialOrder& ord);
MonomialOrder order_from_string(const std::string& s);

/// Content-addressed Groebner memo: keyed on field, variables, order, rank and
/// the generator multiset.  Entries are the canonical reduced bases, so cold
/// and warm lookups are byte-identical.  Concurrent duplicate computation is
/// allowed; both writers produce identical content.
class GroebnerCache {
public:
    static GroebnerCache& instance();

    /// Directory for persistent entries; empty disables the disk layer.
    void set_directory(std::string dir);
    const std::string& directory() const { return dir_; }
    void clear_memory();

    GroebnerBasis module_gb(const PolyRing& R, const ModuleOrder& ord, size_t rank,
                            const std::vector<VecPoly>& gens);

private:
    std::string key_for(const PolyRing& R, const ModuleOrder& ord, size_t rank,
                        const std::vector<VecPoly>& gens) const;
    bool load_disk(const PolyRing& R, const std::string& key, size_t rank, GroebnerBasis& out) const;
    void store_disk(const PolyRing& R, const std::string& key, const GroebnerBasis& gb) const;

    mutable std::mutex mu_;
    std::string dir_;
    std::map<std::string, GroebnerBasis> memory_;
};

}  // namespace modcrit

#endif
