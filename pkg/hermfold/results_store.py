import functools
import logging
from datetime import datetime

import pandas as pd
from sqlalchemy import Boolean, Column, DateTime, Float, Integer, String, create_engine, text
from sqlalchemy.orm import declarative_base, sessionmaker

from hermfold.config import RESULTS_DATABASE_URL

log = logging.getLogger(__name__)

Base = declarative_base()


class CheckRecord(Base):
    __tablename__ = "check_results"

    id = Column(Integer, primary_key=True)
    run_at = Column(DateTime, nullable=False)
    name = Column(String, nullable=False)
    passed = Column(Boolean, nullable=False)
    detail = Column(String)
    seconds = Column(Float)

    def __repr__(self):
        return f"<CheckRecord(id={self.id}, name={self.name}, passed={self.passed})>"


class TableOneRecord(Base):
    __tablename__ = "table1_rows"

    id = Column(Integer, primary_key=True)
    run_at = Column(DateTime, nullable=False)
    q = Column(Integer, nullable=False)
    m = Column(Integer, nullable=False)
    level = Column(String, nullable=False)
    classical = Column(String, nullable=False)
    quantum = Column(String, nullable=False)
    matches_published = Column(Boolean, nullable=False)

    def __repr__(self):
        return f"<TableOneRecord(q={self.q}, m={self.m}, quantum={self.quantum})>"


@functools.lru_cache(maxsize=None)
def get_engine(url=None):
    """Engine for the results database (HERMFOLD_DATABASE_URL by default)."""
    return create_engine(url or RESULTS_DATABASE_URL)


def _session(url):
    return sessionmaker(bind=get_engine(url))()


def init_db(url=None):
    """Create the result tables if they don't exist."""
    Base.metadata.create_all(get_engine(url))
    log.info("results tables ready at %s", get_engine(url).url)


def _add_all(records, url):
    session = _session(url)
    try:
        session.add_all(records)
        session.commit()
        return len(records)
    except Exception:
        session.rollback()
        log.exception("could not store %d records", len(records))
        raise
    finally:
        session.close()


def save_check_results(df, url=None):
    """Store one row per acceptance check (columns name, passed, detail, seconds)."""
    init_db(url)
    run_at = datetime.now()
    records = [
        CheckRecord(
            run_at=run_at,
            name=row["name"],
            passed=bool(row["passed"]),
            detail=str(row.get("detail", "")),
            seconds=float(row.get("seconds", 0.0)),
        )
        for _, row in df.iterrows()
    ]
    return _add_all(records, url)


def save_table1_rows(df, url=None):
    """Store table rows as produced by quantum_params.table1."""
    init_db(url)
    run_at = datetime.now()
    records = [
        TableOneRecord(
            run_at=run_at,
            q=int(row["q"]),
            m=int(row["m"]),
            level=row["level"],
            classical=row["classical"],
            quantum=row["quantum"],
            matches_published=bool(row["matches_published"]),
        )
        for _, row in df.iterrows()
    ]
    return _add_all(records, url)


def _read(table, url):
    init_db(url)
    with get_engine(url).connect() as conn:
        return pd.read_sql(text(f"SELECT * FROM {table} ORDER BY id"), conn)


def get_check_results(url=None):
    return _read(CheckRecord.__tablename__, url)


def get_table1_rows(url=None):
    return _read(TableOneRecord.__tablename__, url)


def clear_results(url=None):
    """Remove every stored check and table row."""
    init_db(url)
    session = _session(url)
    try:
        session.query(CheckRecord).delete()
        session.query(TableOneRecord).delete()
        session.commit()
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


def get_connection_status(url=None):
    """Check if the results database answers."""
    try:
        with get_engine(url).connect() as conn:
            conn.execute(text("SELECT 1"))
        return True
    except Exception as e:
        log.error("results database connection error: %s", e)
        return False
