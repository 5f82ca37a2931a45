#ifndef FRAMEFORGE_CHAMBER_HPP
#define FRAMEFORGE_CHAMBER_HPP

#include <string>
#include <utility>
#include <vector>

#include "frameforge/coxeter.hpp"

namespace frameforge {

/// Type-preserving injection of the Coxeter complex into a building:
/// chamber_of[w] is the chamber labelled by element w.
struct Apartment {
  std::vector<int> chamber_of;
};

/// A building given as a typed chamber system: for each generator s the
/// chambers are partitioned into s-panels; the apartment system is part of
/// the data.
class ChamberComplex {
 public:
  /// `panels[s]` lists the s-panels as sets of chamber ids. The constructor
  /// checks that every chamber lies in exactly one s-panel per s and that
  /// every panel has at least two chambers (PanelTooSmall otherwise), then
  /// stores the panels in canonical order.
  ChamberComplex(CoxeterSystemPtr type, int chamber_count,
                 std::vector<std::vector<std::vector<int>>> panels,
                 std::vector<Apartment> apartments);

  const CoxeterSystemPtr& type() const { return type_; }
  const CoxeterSystem& system() const { return *type_; }
  int rank() const { return type_->rank(); }
  int chamber_count() const { return chamber_count_; }

  int panel_count(int s) const { return static_cast<int>(panels_[s].size()); }
  int panel_of(int s, int chamber) const { return panel_of_[s][chamber]; }
  const std::vector<int>& panel(int s, int panel_id) const { return panels_[s][panel_id]; }
  const std::vector<std::vector<int>>& panels(int s) const { return panels_[s]; }

  const std::vector<Apartment>& apartments() const { return apartments_; }

  /// Chambers sharing some panel with `chamber`, each listed once.
  std::vector<int> neighbours(int chamber) const;

 private:
  CoxeterSystemPtr type_;
  int chamber_count_;
  std::vector<std::vector<std::vector<int>>> panels_;
  std::vector<std::vector<int>> panel_of_;
  std::vector<Apartment> apartments_;
};

struct Thickness {
  enum class Kind { Thin, Thick };
  Kind kind = Kind::Thin;
  int count = 2;

  static Thickness of(int chamber_count);
  bool is_thick() const { return kind == Kind::Thick; }
  friend bool operator==(const Thickness&, const Thickness&) = default;
};

/// A wall of an apartment: the fixed set of a reflection, carried by the
/// building panels {A(w), A(rw)}.
struct Wall {
  int apartment = 0;
  int reflection = 0;
  std::vector<std::pair<int, int>> panels;  // (generator, panel id), sorted
};

/// The rank-0 complex of type ({id}, {}) with a single chamber.
ChamberComplex trivial_complex();
ChamberComplex coxeter_complex(const CoxeterSystemPtr& sys);
/// Rank-1 building with `points` chambers in one panel; one apartment per
/// unordered pair of chambers.
ChamberComplex rank_one_building(int points);
/// Chamber-wise product; generators of `b` follow those of `a`.
ChamberComplex join(const ChamberComplex& a, const ChamberComplex& b);

Thickness panel_thickness(const ChamberComplex& cx, int s, int panel_id);

Wall wall(const ChamberComplex& cx, int apartment, int reflection);
/// Classifies the wall and throws MixedWall if its panels disagree.
Thickness wall_thickness(const ChamberComplex& cx, int apartment, int reflection);

/// Folding of an apartment onto the half containing A(1) (side = +1) or the
/// opposite half (side = -1). Entry c is the image of chamber c, or -1 for
/// chambers outside the apartment.
std::vector<int> fold(const ChamberComplex& cx, int apartment, int reflection, int side);

struct ValidationReport {
  bool valid = true;
  long violation_count = 0;
  std::vector<std::string> violations;  // first few, human readable
  /// Checks are relative to the supplied apartment system.
  std::string scope = "relative to the supplied apartment system";

  void add(std::string message);
};

ValidationReport validate_building(const ChamberComplex& cx);

/// All minimal galleries from `from` to `to` as chamber sequences including
/// both ends. Throws Disconnected if `to` is unreachable.
std::vector<std::vector<int>> minimal_galleries(const ChamberComplex& cx, int from, int to);

/// Gallery distances from `from`; -1 for unreachable chambers.
std::vector<int> gallery_distances(const ChamberComplex& cx, int from);

bool is_thick(const ChamberComplex& cx);

}  // namespace frameforge

#endif  // FRAMEFORGE_CHAMBER_HPP
