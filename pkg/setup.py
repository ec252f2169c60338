"""Setup script for the fixglue engine"""

import os
import subprocess
import sys
from pathlib import Path


def run_command(command, description):
    """Run a shell command"""
    print(f"\n{'='*60}")
    print(f"{description}")
    print(f"{'='*60}")

    try:
        result = subprocess.run(
            command,
            shell=True,
            check=True,
            capture_output=True,
            text=True
        )
        print(result.stdout)
        return True
    except subprocess.CalledProcessError as e:
        print(f"Error: {e.stderr}")
        return False


def check_python_version():
    """Check Python version"""
    version = sys.version_info
    if version.major < 3 or (version.major == 3 and version.minor < 11):
        print("ERROR: Python 3.11 or higher is required")
        print(f"Current version: {version.major}.{version.minor}.{version.micro}")
        return False
    print(f"✓ Python version: {version.major}.{version.minor}.{version.micro}")
    return True


def setup_virtualenv():
    """Create the virtual environment"""
    if not os.path.exists("venv"):
        if not run_command(f"{sys.executable} -m venv venv", "Creating virtual environment"):
            return False
    print("✓ Virtual environment ready")
    return True


def install_python_deps(minimal: bool):
    """Install Python dependencies"""
    pip_cmd = "venv/bin/pip" if os.name != "nt" else "venv\\Scripts\\pip"
    requirements = "requirements-minimal.txt" if minimal else "requirements.txt"
    return run_command(f"{pip_cmd} install -r {requirements}", f"Installing {requirements}")


def setup_env_file():
    """Create .env from the template"""
    if os.path.exists(".env"):
        print("✓ .env file already exists")
        return True
    with open(".env.example", "r") as src:
        with open(".env", "w") as dst:
            dst.write(src.read())
    print("✓ .env file created")
    print("  Set FIXGLUE_REFERENCE_DB to the 41-code database to enable the length-72 run")
    return True


def create_directories():
    """Create output directories"""
    for directory in ["logs", "data", "reports"]:
        Path(directory).mkdir(exist_ok=True)
        print(f"✓ Created directory: {directory}")
    return True


def run_selftest():
    """Length-8 end-to-end check"""
    python = "venv/bin/python" if os.name != "nt" else "venv\\Scripts\\python"
    return run_command(f"{python} -m src.main selftest", "Running selftest")


def print_next_steps():
    print("\n" + "="*60)
    print("SETUP COMPLETE!")
    print("="*60)
    print("\nNext steps:")
    print("  1. Put the self-dual [36,18,8] database under data/")
    print("  2. python -m src.main verify-paper --db data/sd36_d8.txt --report reports/n72.json")
    print("  3. pytest                      # fast suite")
    print("     FIXGLUE_REFERENCE_DB=... pytest  # adds the length-72 run")
    print("\nDocumentation:")
    print("  - README.md - Quick start guide")
    print("  - ARCHITECTURE.md - Pipeline stages and modules")
    print("  - config.yaml - Engine parameters")
    print("\n" + "="*60)


def main():
    print("="*60)
    print("FIXGLUE - SETUP")
    print("="*60)

    if not check_python_version():
        return 1
    if not setup_virtualenv():
        print("ERROR: Failed to create virtual environment")
        return 1
    if not install_python_deps(minimal="--minimal" in sys.argv):
        print("ERROR: Failed to install Python dependencies")
        return 1
    if not setup_env_file():
        return 1
    if not create_directories():
        return 1
    if not run_selftest():
        print("WARNING: selftest failed, see output above")

    print_next_steps()
    return 0


if __name__ == "__main__":
    sys.exit(main())
