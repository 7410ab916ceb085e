from hermfold.config import TABLE1_ROWS
from hermfold.quantum_params import table1, table1_frame
from hermfold.results_store import clear_results, get_connection_status, init_db, save_table1_rows


def initialize_results_with_table():
    """Create the results tables and load the formula-level parameter table."""

    # Check database connection
    if not get_connection_status():
        print("Failed to connect to the results database. Check HERMFOLD_DATABASE_URL.")
        return False

    print("Initializing results database...")
    init_db()

    print("Clearing existing results...")
    clear_results()

    try:
        rows = table1_frame([table1(q, m, level="formula") for q, m in TABLE1_ROWS])
        count = save_table1_rows(rows)
        print(f"Stored {count} table rows.")
        mismatched = rows[~rows["matches_published"]]
        if len(mismatched):
            print(f"{len(mismatched)} rows differ from the published values.")
        return True
    except Exception as e:
        print(f"Error loading table rows: {e}")
        return False


if __name__ == "__main__":
    initialize_results_with_table()
