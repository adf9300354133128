#include "umlsem/core/ids.hpp"

#include <algorithm>

namespace umlsem {

std::string ObjectId::to_string() const { return cls + "#" + std::to_string(index); }

IdSetSpec IdSetSpec::empty() {
  IdSetSpec s;
  s.classes_ = std::vector<ClassName>{};
  return s;
}

IdSetSpec IdSetSpec::of_classes(std::vector<ClassName> classes) {
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  IdSetSpec s;
  s.classes_ = std::move(classes);
  return s;
}

IdSetSpec IdSetSpec::creatables_of(const ObjectId& creator) {
  IdSetSpec s;
  s.creator_ = ObjectId{creator.cls, creator.index, std::nullopt};
  return s;
}

bool IdSetSpec::is_empty() const { return classes_ && classes_->empty(); }

bool IdSetSpec::contains(const ObjectId& id) const {
  if (classes_ && !std::binary_search(classes_->begin(), classes_->end(), id.cls)) return false;
  if (creator_) {
    if (!id.tag) return false;
    return id.tag->creator_class == creator_->cls && id.tag->creator_index == creator_->index;
  }
  return true;
}

bool IdSetSpec::disjoint_with(const IdSetSpec& other) const {
  if (is_empty() || other.is_empty()) return true;
  // Two creator-restricted sets are disjoint exactly when the creators differ.
  if (creator_ && other.creator_ && *creator_ != *other.creator_) return true;
  if (classes_ && other.classes_) {
    std::vector<ClassName> common;
    std::set_intersection(classes_->begin(), classes_->end(), other.classes_->begin(), other.classes_->end(),
                          std::back_inserter(common));
    if (common.empty()) return true;
  }
  return false;
}

std::string IdSetSpec::to_string() const {
  if (is_empty()) return "{}";
  std::string out = "{id";
  std::string sep = " | ";
  if (classes_) {
    out += sep + "class(id) in {";
    for (std::size_t i = 0; i < classes_->size(); ++i) out += (i ? ", " : "") + (*classes_)[i];
    out += "}";
    sep = ", ";
  }
  if (creator_) out += sep + "creator(id) = " + creator_->to_string();
  return out + "}";
}

IdSetSpec creatables(const ObjectId& id) { return IdSetSpec::creatables_of(id); }

ObjectId allocate_created(const ObjectId& creator, const ClassName& cls, std::uint64_t index,
                          std::uint64_t ordinal) {
  return ObjectId{cls, index, Provenance{creator.cls, creator.index, ordinal}};
}

}  // namespace umlsem
