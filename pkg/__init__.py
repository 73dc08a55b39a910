"""
flowkit - Flowthings models: text format, validation, simulation and diagrams.

Flowthings models describe systems as spheres of machines whose stages
(Create, Arrive, Accept, Receive, Process, Release, Transfer, Storage) are
joined by flow arcs that carry things and trigger arcs that carry none.

Quick Start:
    ```python
    from framework import FlowkitFramework

    framework = FlowkitFramework()
    report = framework.check("corpus/book.fm")
    result = framework.simulate("corpus/book.fm", "corpus/scenarios/book/default.json")
    print(result.trace.final_tick, len(result.process))
    ```

Architecture:
    - core: Configuration, constants, exceptions
    - model: Stage kinds, model elements, guards, builder
    - dsl: .fm grammar, parser with positioned diagnostics, canonical serializer
    - analysis: Validation rules and flow reachability
    - simulation: Scenarios, deterministic stepping, traces, event extraction
    - render: Graphviz DOT output
    - cli: Command line and the bundled corpus
    - utils: File handling and name validation
"""

__version__ = "1.0.0"
