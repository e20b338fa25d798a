"""Grid Ramsey workbench: grid subgraphs, bridging and exact small grid Ramsey numbers."""
