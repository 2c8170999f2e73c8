"""
File: trace_writer.py
Description: Writes the hop-by-hop trace of every probe as JSON lines
Author: RingDiag Team
Created: 2025-06-10
"""

import json
import logging
from pathlib import Path
from typing import IO, Optional, Union

from src.core.domain.entities import ProbeOutcome, ProbeRecord

from .report_writers import ReportWriteException

logger = logging.getLogger(__name__)


class ProbeTraceWriter:
    """Probe observer writing one line per hop:
    {probe, hop, switch, rule_id, event, arc, target, direction}."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.probes = 0
        self._stream: Optional[IO[str]] = None

    def __enter__(self) -> "ProbeTraceWriter":
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._stream = self.path.open("w", encoding="utf-8")
        except OSError as e:
            raise ReportWriteException(f"Cannot open trace file {self.path}: {str(e)}")
        return self

    def __exit__(self, *exc) -> None:
        if self._stream is not None:
            self._stream.close()
            self._stream = None
            logger.info(f"Wrote traces of {self.probes} probes to {self.path}")

    def __call__(self, record: ProbeRecord, outcome: ProbeOutcome) -> None:
        if self._stream is None:
            raise ReportWriteException("Trace writer used outside its context")
        self.probes += 1
        for hop_number, hop in enumerate(outcome.trace):
            line = {
                "probe": self.probes,
                "hop": hop_number,
                **hop.to_dict(),
                "target": record.target,
                "direction": record.direction.value,
            }
            self._stream.write(json.dumps(line, sort_keys=True) + "\n")
