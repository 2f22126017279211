"""ssnforge: an SSN-based sensor schema registry.

Define sensor types and deployed sensor instances, map them deterministically
to RDF, publish them in a persistent named-graph store discoverable through a
SPARQL-subset query language, and emit the metadata configuration file a
stream annotator consumes.
"""

__version__ = "0.1.0"
