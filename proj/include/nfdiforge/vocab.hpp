#pragma once

#include "nfdiforge/term.hpp"

// Well-known IRIs. The BFO/NFDIcore names follow the bundled fixture
// conventions documented in NAMES.md.
namespace nfdiforge::vocab {

inline const Iri& rdf_type() {
  static const Iri v("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
  return v;
}
inline const Iri& rdf_first() {
  static const Iri v("http://www.w3.org/1999/02/22-rdf-syntax-ns#first");
  return v;
}
inline const Iri& rdf_rest() {
  static const Iri v("http://www.w3.org/1999/02/22-rdf-syntax-ns#rest");
  return v;
}
inline const Iri& rdf_nil() {
  static const Iri v("http://www.w3.org/1999/02/22-rdf-syntax-ns#nil");
  return v;
}
inline const Iri& rdf_lang_string() {
  static const Iri v("http://www.w3.org/1999/02/22-rdf-syntax-ns#langString");
  return v;
}
inline const Iri& rdf_property() {
  static const Iri v("http://www.w3.org/1999/02/22-rdf-syntax-ns#Property");
  return v;
}

inline const Iri& rdfs_sub_class_of() {
  static const Iri v("http://www.w3.org/2000/01/rdf-schema#subClassOf");
  return v;
}
inline const Iri& rdfs_sub_property_of() {
  static const Iri v("http://www.w3.org/2000/01/rdf-schema#subPropertyOf");
  return v;
}
inline const Iri& rdfs_domain() {
  static const Iri v("http://www.w3.org/2000/01/rdf-schema#domain");
  return v;
}
inline const Iri& rdfs_range() {
  static const Iri v("http://www.w3.org/2000/01/rdf-schema#range");
  return v;
}
inline const Iri& rdfs_class() {
  static const Iri v("http://www.w3.org/2000/01/rdf-schema#Class");
  return v;
}
inline const Iri& rdfs_label() {
  static const Iri v("http://www.w3.org/2000/01/rdf-schema#label");
  return v;
}

inline const Iri& owl_class() {
  static const Iri v("http://www.w3.org/2002/07/owl#Class");
  return v;
}
inline const Iri& owl_object_property() {
  static const Iri v("http://www.w3.org/2002/07/owl#ObjectProperty");
  return v;
}
inline const Iri& owl_datatype_property() {
  static const Iri v("http://www.w3.org/2002/07/owl#DatatypeProperty");
  return v;
}
inline const Iri& owl_equivalent_class() {
  static const Iri v("http://www.w3.org/2002/07/owl#equivalentClass");
  return v;
}
inline const Iri& owl_intersection_of() {
  static const Iri v("http://www.w3.org/2002/07/owl#intersectionOf");
  return v;
}
inline const Iri& owl_disjoint_with() {
  static const Iri v("http://www.w3.org/2002/07/owl#disjointWith");
  return v;
}

inline const Iri& xsd_string() {
  static const Iri v("http://www.w3.org/2001/XMLSchema#string");
  return v;
}

// BFO roots and relations (obo namespace; see NAMES.md).
inline const Iri& bfo_continuant() {
  static const Iri v("http://purl.obolibrary.org/obo/Continuant");
  return v;
}
inline const Iri& bfo_occurrent() {
  static const Iri v("http://purl.obolibrary.org/obo/Occurrent");
  return v;
}
inline const Iri& bfo_independent_continuant() {
  static const Iri v("http://purl.obolibrary.org/obo/IndependentContinuant");
  return v;
}
inline const Iri& bfo_role() {
  static const Iri v("http://purl.obolibrary.org/obo/Role");
  return v;
}
inline const Iri& bfo_process() {
  static const Iri v("http://purl.obolibrary.org/obo/Process");
  return v;
}
inline const Iri& has_role() {
  static const Iri v("http://purl.obolibrary.org/obo/RO_0000087");
  return v;
}
inline const Iri& participates_in() {
  static const Iri v("http://purl.obolibrary.org/obo/RO_0000056");
  return v;
}
inline const Iri& realized_in() {
  static const Iri v("http://purl.obolibrary.org/obo/BFO_0000054");
  return v;
}

inline const Iri& nfdicore_resource() {
  static const Iri v("https://nfdi.fiz-karlsruhe.de/ontology/Resource");
  return v;
}

}  // namespace nfdiforge::vocab
