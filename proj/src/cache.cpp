#include "modcrit/cache.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace modcrit {

std::string fnv1a64_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string order_to_string(const MonomialOrder& ord) {
    switch (ord.kind) {
        case MonomialOrder::Kind::Lex:
            return "lex";
        case MonomialOrder::Kind::Grevlex:
            return "grevlex";
        case MonomialOrder::Kind::Block:
            return "block:" + std::to_string(ord.split);
    }
    return "grevlex";
}

MonomialOrder order_from_string(const std::string& s) {
    if (s == "lex") return MonomialOrder::lex();
    if (s == "grevlex") return MonomialOrder::grevlex();
    if (s.rfind("block:", 0) == 0) return MonomialOrder::block(std::stoul(s.substr(6)));
    throw std::invalid_argument("unknown order '" + s + "'");
}

GroebnerCache& GroebnerCache::instance() {
    static GroebnerCache cache;
    return cache;
}

void GroebnerCache::set_directory(std::string dir) {
    std::lock_guard<std::mutex> lk(mu_);
    dir_ = std::move(dir);
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

void GroebnerCache::clear_memory() {
    std::lock_guard<std::mutex> lk(mu_);
    memory_.clear();
}

std::string GroebnerCache::key_for(const PolyRing& R, const ModuleOrder& ord, size_t rank,
                                   const std::vector<VecPoly>& gens) const {
    std::ostringstream os;
    os << "field=" << R.field.p << ";vars=";
    for (size_t i = 0; i < R.vars.size(); ++i) os << (i ? "," : "") << R.vars[i];
    os << ";order=" << order_to_string(R.order) << ";mord=" << order_to_string(ord.mono)
       << ";elim=" << ord.elim_vars << ";pot=" << (ord.pot_limit == SIZE_MAX ? std::string("all")
                                                                             : std::to_string(ord.pot_limit))
       << ";rank=" << rank << ";gens=";
    std::vector<std::string> ser;
    ser.reserve(gens.size());
    for (auto& g : gens) ser.push_back(to_string(R, g));
    std::sort(ser.begin(), ser.end());
    for (auto& s : ser) os << s << '|';
    return os.str();
}

namespace {

bool verify_reduced(const PolyRing& R, const ModuleOrder& ord, const GroebnerBasis& gb) {
    std::vector<ModTerm> lts;
    for (auto& g : gb.elems) {
        auto lt = leading(R, ord, g);
        if (!lt || !lt->c.is_one()) return false;
        lts.push_back(*lt);
    }
    for (size_t i = 0; i < gb.elems.size(); ++i) {
        for (size_t j = 0; j < gb.elems.size(); ++j) {
            if (i == j) continue;
            for (size_t comp = 0; comp < gb.rank; ++comp) {
                if (lts[j].comp != comp) continue;
                for (auto& t : gb.elems[i].c[comp].terms())
                    if (divides(lts[j].m, t.m)) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool GroebnerCache::load_disk(const PolyRing& R, const std::string& key, size_t rank,
                              GroebnerBasis& out) const {
    std::string path = dir_ + "/" + fnv1a64_hex(key) + ".gb";
    std::ifstream in(path);
    if (!in) return false;
    std::string stored_key;
    if (!std::getline(in, stored_key) || stored_key != key) return false;
    std::string line;
    if (!std::getline(in, line)) return false;
    size_t stored_rank = std::stoul(line);
    if (stored_rank != rank) return false;
    GroebnerBasis gb;
    gb.rank = rank;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        VecPoly v = VecPoly::zero(rank);
        std::stringstream ss(line);
        std::string part;
        size_t comp = 0;
        while (std::getline(ss, part, ';')) {
            if (comp >= rank) return false;
            v.c[comp++] = parse_polynomial(R, part);
        }
        if (comp != rank) return false;
        gb.elems.push_back(std::move(v));
    }
    out = std::move(gb);
    return true;
}

void GroebnerCache::store_disk(const PolyRing& R, const std::string& key,
                               const GroebnerBasis& gb) const {
    std::string path = dir_ + "/" + fnv1a64_hex(key) + ".gb";
    std::string tmp = path + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << key << '\n' << gb.rank << '\n';
        for (auto& g : gb.elems) {
            for (size_t c = 0; c < gb.rank; ++c) out << (c ? ";" : "") << to_string(R, g.c[c]);
            out << '\n';
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

GroebnerBasis GroebnerCache::module_gb(const PolyRing& R, const ModuleOrder& ord, size_t rank,
                                       const std::vector<VecPoly>& gens) {
    std::string key = key_for(R, ord, rank, gens);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memory_.find(key);
        if (it != memory_.end()) return it->second;
    }
    std::string dir;
    {
        std::lock_guard<std::mutex> lk(mu_);
        dir = dir_;
    }
    if (!dir.empty()) {
        GroebnerBasis loaded;
        if (load_disk(R, key, rank, loaded) && verify_reduced(R, ord, loaded)) {
            std::lock_guard<std::mutex> lk(mu_);
            memory_.emplace(key, loaded);
            return loaded;
        }
    }
    GroebnerBasis gb = buchberger(R, ord, rank, gens);
    {
        std::lock_guard<std::mutex> lk(mu_);
        memory_.emplace(key, gb);
    }
    if (!dir.empty()) store_disk(R, key, gb);
    return gb;
}

}  // namespace modcrit
