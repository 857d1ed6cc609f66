import sys

from dotenv import load_dotenv

load_dotenv()

from cli.commands import main  # noqa: E402

if __name__ == "__main__":
    """程序入口：eval / verify / spectrum"""
    sys.exit(main())
